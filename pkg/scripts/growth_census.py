"""
Element census for a catalog entry: how many distinct elements each word
length reaches, and how long their greedy normal forms get.

    python scripts/growth_census.py --key braid:4 --max-len 6
"""

from __future__ import annotations

import argparse
import dataclasses
import time

from garsidekit import catalog
from garsidekit.core import concat, empty_word


@dataclasses.dataclass(frozen=True)
class CensusConfig:
    key: str = "braid:3"
    max_len: int = 6


def run(cfg: CensusConfig) -> None:
    entry = catalog.build(cfg.key)
    fam = entry.family
    if fam is None:
        raise SystemExit(f"{cfg.key} ships without a Garside family; nothing to count")
    ctx = fam.ctx
    atoms = sorted(ctx.atoms(), key=ctx.show)
    objects = sorted({a.source for a in atoms} | {a.target for a in atoms})
    print(f"key: {cfg.key}")
    print(f"atoms: {' '.join(ctx.show(a) for a in atoms)}")
    print(f"simples (with identity): {len(fam) + 1}")
    print(f"{'len':>4} {'words':>12} {'new':>8} {'total':>8} {'max sup':>8} {'mean sup':>9}")

    t0 = time.perf_counter()
    seen: set[tuple] = set()
    frontier = []
    for o in objects:
        nd = fam.normalize(empty_word(o))
        seen.add((nd.factors, o, o))
        frontier.append(nd.word())
    # composable-path counts per target object, by the obvious recurrence
    paths = {o: 1 for o in objects}
    total = len(frontier)
    print(f"{0:>4} {len(objects):>12} {len(objects):>8} {total:>8} {0:>8} {0.0:>9.2f}")

    for n in range(1, cfg.max_len + 1):
        paths = {
            o: sum(paths[a.source] for a in atoms if a.target == o) for o in objects
        }
        next_frontier = []
        sups = []
        for w in frontier:
            for a in atoms:
                if a.source != w.target:
                    continue
                nd = fam.normalize(concat(w, a))
                key = (nd.factors, nd.source, nd.target)
                if key in seen:
                    continue
                seen.add(key)
                next_frontier.append(nd.word())
                sups.append(len(nd.factors))
        frontier = next_frontier
        total += len(sups)
        max_sup = max(sups, default=0)
        mean_sup = sum(sups) / len(sups) if sups else 0.0
        print(
            f"{n:>4} {sum(paths.values()):>12} {len(sups):>8} {total:>8}"
            f" {max_sup:>8} {mean_sup:>9.2f}"
        )
        if not frontier:
            print(f"saturated at length {n}: every longer word repeats an element")
            break
    print(f"elapsed: {time.perf_counter() - t0:.2f}s")


def main(argv: list[str] | None = None) -> None:
    defaults = CensusConfig()
    ap = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    ap.add_argument("--key", default=defaults.key, help="catalog entry to census")
    ap.add_argument("--max-len", type=int, default=defaults.max_len)
    ns = ap.parse_args(argv)
    run(CensusConfig(key=ns.key, max_len=ns.max_len))


if __name__ == "__main__":
    main()
