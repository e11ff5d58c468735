"""
Sliding-orbit statistics on random signed words: steps until the orbit
closes, circuit sizes, and headroom against the divisor-count step bound,
with every returned conjugator re-checked.

    python scripts/sliding_orbits.py --key braid:3 --samples 300 --length 10 --seed 7
"""

from __future__ import annotations

import argparse
import dataclasses
import random
import time
from collections import Counter

from garsidekit import catalog
from garsidekit.bounded import delta_normalize
from garsidekit.conjugacy import circuit_of, conj, cyclic_sliding, signed_equal, slide_to_circuit
from garsidekit.core import SignedWord


@dataclasses.dataclass(frozen=True)
class OrbitConfig:
    key: str = "braid:3"
    samples: int = 300
    length: int = 10
    seed: int = 0
    positive: bool = False


def run(cfg: OrbitConfig) -> None:
    entry = catalog.build(cfg.key)
    gm = entry.garside_map
    if gm is None:
        raise SystemExit(f"{cfg.key} ships without a Garside map; nothing to slide")
    ctx = gm.ctx
    atoms = ctx.atoms()
    if {a.source for a in atoms} | {a.target for a in atoms} != {0}:
        raise SystemExit("this experiment only samples one-object entries")
    atom_ids = sorted(a.letters[0] for a in atoms)
    divisor_count = len(entry.family) + 1
    rng = random.Random(cfg.seed)

    steps_seen = Counter()
    circuit_sizes = Counter()
    slack = []
    verified = 0
    t0 = time.perf_counter()
    for _ in range(cfg.samples):
        letters = tuple(
            (rng.choice(atom_ids), 1 if cfg.positive else rng.choice((1, -1)))
            for _ in range(cfg.length)
        )
        w = SignedWord(letters, 0, 0)
        d = delta_normalize(gm, w)
        bound = divisor_count * (d.sup - d.inf + 1)

        seen = set()
        cur, steps = d, 0
        while (cur.m, cur.factors) not in seen:
            seen.add((cur.m, cur.factors))
            cur = cyclic_sliding(gm, cur)
            steps += 1
        steps_seen[steps] += 1
        slack.append(bound - steps)
        if steps > bound:
            raise SystemExit(
                f"bound violated: {steps} steps > {bound} on {ctx.show_signed(w)}"
            )
        circuit_sizes[len(circuit_of(gm, cur))] += 1

        node, c = slide_to_circuit(gm, d)
        if signed_equal(gm, conj(ctx, w, c), node.signed_word()):
            verified += 1

    n = cfg.samples
    mean_steps = sum(k * v for k, v in steps_seen.items()) / n
    print(f"key: {cfg.key}   samples: {n}   length: {cfg.length}   seed: {cfg.seed}")
    print(f"letters: {'positive' if cfg.positive else 'signed'}   divisors: {divisor_count}")
    print(f"steps to circuit: mean {mean_steps:.2f}, max {max(steps_seen)}")
    print(f"bound slack: min {min(slack)}, mean {sum(slack) / n:.1f} (no violations)")
    print(f"circuit sizes: {dict(sorted(circuit_sizes.items()))}")
    print(f"conjugators verified: {verified}/{n}")
    print(f"elapsed: {time.perf_counter() - t0:.2f}s")


def main(argv: list[str] | None = None) -> None:
    defaults = OrbitConfig()
    ap = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    ap.add_argument("--key", default=defaults.key, help="catalog entry to sample")
    ap.add_argument("--samples", type=int, default=defaults.samples)
    ap.add_argument("--length", type=int, default=defaults.length)
    ap.add_argument("--seed", type=int, default=defaults.seed)
    ap.add_argument("--positive", action="store_true", help="sample positive words only")
    ns = ap.parse_args(argv)
    run(
        OrbitConfig(
            key=ns.key,
            samples=ns.samples,
            length=ns.length,
            seed=ns.seed,
            positive=ns.positive,
        )
    )


if __name__ == "__main__":
    main()
