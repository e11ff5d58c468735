"""
Conjugacy over a bounded Garside context: cycling, decycling, cyclic
sliding, sliding-circuit sets, and the conjugacy decision procedure.

Conventions (they differ across the literature; this engine fixes one and
tests assert only convention-independent facts): for g = Δ^m·x₁⋯x_k,

    cycling    conjugates by ι(g) = φ^{-m}(x₁), giving Δ^m·x₂⋯x_k·φ^{-m}(x₁);
    decycling  conjugates by x_k^{-1},         giving Δ^m·φ^m(x_k)·x₁⋯x_{k-1};
    sliding    conjugates by the preferred prefix gcd(φ^{-m}(x₁), ∂x_k).

All three stay inside the conjugacy class; iterated sliding reaches a
circuit because the state space (Δ-normal keys at fixed inf/sup window) is
finite.  The sliding-circuit set is closed under conjugation by divisors of
Δ, so a BFS over divisor conjugations that re-slides every candidate and
keeps the extremal (inf, sup) layer enumerates it; conjugators are recorded
per node and every witness is re-verified before exposure.
"""

from __future__ import annotations

import dataclasses

from .bounded import DeltaNormal, GarsideMap, delta_normalize
from .core import SignedWord, Word, concat, concat_signed, empty_word, free_reduce
from .errors import ExplosionGuard, GarsideError, INCONCLUSIVE


def conj(ctx, g: SignedWord, c: SignedWord) -> SignedWord:
    """c^-1 * g * c, freely reduced."""
    return free_reduce(concat_signed(concat_signed(c.inverse(), g), c))


def signed_equal(gm: GarsideMap, u: SignedWord, v: SignedWord) -> bool:
    """Groupoid equality via Δ-normal forms."""
    du = delta_normalize(gm, u)
    dv = delta_normalize(gm, v)
    return du.m == dv.m and du.factors == dv.factors


def _signed(w: Word) -> SignedWord:
    return SignedWord(tuple((g, +1) for g in w.letters), w.source, w.target)


def _from_power_and_word(gm: GarsideMap, m: int, w: Word, endpoints) -> DeltaNormal:
    nd = gm.family.normalize(w)
    lead = 0
    for i in nd.factors:
        if gm.compl.get(i, 0) is None:
            lead += 1
        else:
            break
    src, tgt = endpoints
    return DeltaNormal(gm, m + lead, nd.factors[lead:], src, tgt)


def cycling(gm: GarsideMap, d: DeltaNormal) -> DeltaNormal:
    """Conjugate by ι(d) = φ^{-m}(x₁); fixed point when there are no factors."""
    if not d.factors:
        return d
    x1 = gm.family.elements[d.factors[0]]
    iota = gm.phi(x1, -d.m)
    tail = empty_word(_factor_source(gm, d, 1))
    for i in d.factors[1:]:
        tail = concat(tail, gm.family.elements[i])
    tail = concat(tail, iota)
    return _from_power_and_word(gm, d.m, tail, (d.source, d.target))


def decycling(gm: GarsideMap, d: DeltaNormal) -> DeltaNormal:
    """Conjugate by x_k^{-1}; fixed point when there are no factors."""
    if not d.factors:
        return d
    xk = gm.family.elements[d.factors[-1]]
    head = gm.phi(xk, d.m)
    w = head
    for i in d.factors[:-1]:
        w = concat(w, gm.family.elements[i])
    return _from_power_and_word(gm, d.m, w, (d.source, d.target))


def preferred_prefix(gm: GarsideMap, d: DeltaNormal) -> Word:
    """gcd of φ^{-m}(x₁) and ∂x_k; the empty word when there are no factors."""
    if not d.factors:
        return empty_word(d.source)
    x1 = gm.family.elements[d.factors[0]]
    xk = gm.family.elements[d.factors[-1]]
    f1 = gm.family.index(gm.phi(x1, -d.m))
    f2 = gm.family.index(gm.complement(xk))
    if f2 is None:  # ∂x_k trivial would mean x_k = Δ, excluded from factors
        return empty_word(d.source)
    mi = gm.meet(f1, f2)
    if mi is None:
        return empty_word(d.source)
    return gm.family.elements[mi]


def cyclic_sliding(gm: GarsideMap, d: DeltaNormal) -> DeltaNormal:
    """Conjugate by the preferred prefix."""
    p = preferred_prefix(gm, d)
    if p.is_empty:
        return d
    # p divides phi^{-m}(x1), so the conjugate stays positive:
    # p^-1 Δ^m x1...xk p = Δ^m (φ^m(p)\x1) x2...xk p
    x1 = gm.family.elements[d.factors[0]]
    q = gm.ctx.left_quotient(gm.phi(p, d.m), x1)
    if q is None or q is INCONCLUSIVE:
        raise GarsideError("preferred prefix failed to divide the first factor")
    w = q
    for i in d.factors[1:]:
        w = concat(w, gm.family.elements[i])
    w = concat(w, p)
    return _from_power_and_word(gm, d.m, w, (d.source, d.target))


def _factor_source(gm: GarsideMap, d: DeltaNormal, start: int) -> int:
    if start < len(d.factors):
        return gm.family.elements[d.factors[start]].source
    return d.source


def _key(d: DeltaNormal) -> tuple[int, tuple[int, ...]]:
    return (d.m, d.factors)


def slide_to_circuit(gm: GarsideMap, d: DeltaNormal):
    """
    Iterate sliding until a repeat; returns (circuit entry, conjugator from
    d to it).  The conjugator collects the preferred prefixes used.
    """
    budget = gm.ctx.limits.node_budget
    seen: dict[tuple[int, tuple[int, ...]], int] = {}
    trail: list[DeltaNormal] = [d]
    conjugators: list[Word] = []
    cur = d
    while _key(cur) not in seen:
        seen[_key(cur)] = len(trail) - 1
        if len(trail) > budget:
            raise ExplosionGuard("sliding did not reach a circuit within budget")
        p = preferred_prefix(gm, cur)
        nxt = cyclic_sliding(gm, cur)
        conjugators.append(p)
        trail.append(nxt)
        cur = nxt
    entry = seen[_key(cur)]
    c = empty_word(d.source)
    for p in conjugators[:entry]:
        c = concat(c, p)
    return trail[entry], _signed(c)


def circuit_of(gm: GarsideMap, d: DeltaNormal):
    """
    The sliding circuit through a point known to lie on one: iterate sliding
    back around to the start, collecting (node, conjugator-from-d) pairs.
    """
    out = [(d, _signed(empty_word(d.source)))]
    c = empty_word(d.source)
    cur = d
    while True:
        p = preferred_prefix(gm, cur)
        nxt = cyclic_sliding(gm, cur)
        c = concat(c, p)
        if _key(nxt) == _key(d):
            return out
        out.append((nxt, _signed(c)))
        cur = nxt


@dataclasses.dataclass(frozen=True)
class ConjugacyOrbitNode:
    element: DeltaNormal
    conjugator: SignedWord  # from the root element to this node

    @property
    def inf(self) -> int:
        return self.element.inf

    @property
    def sup(self) -> int:
        return self.element.sup


@dataclasses.dataclass(frozen=True)
class SlidingCircuitSet:
    root: SignedWord
    nodes: tuple[ConjugacyOrbitNode, ...]
    edges: dict[tuple[int, tuple[int, ...]], tuple[int, tuple[int, ...]]]

    def keys(self) -> set[tuple[int, tuple[int, ...]]]:
        return {_key(n.element) for n in self.nodes}

    def node_for(self, key) -> ConjugacyOrbitNode:
        for n in self.nodes:
            if _key(n.element) == key:
                return n
        raise KeyError(key)


def sliding_circuit_set(gm: GarsideMap, g: SignedWord | Word) -> SlidingCircuitSet:
    """
    BFS closure: slide g to a circuit, then conjugate every node by each
    nontrivial divisor of Δ, re-slide, and keep nodes on circuits with the
    same (inf, sup).  Deterministic order; every stored conjugator is
    verified against the root before the set is returned.
    """
    if isinstance(g, Word):
        g = _signed(g)
    ctx = gm.ctx
    budget = ctx.limits.node_budget
    d0 = delta_normalize(gm, g)
    limit, c_entry = slide_to_circuit(gm, d0)
    inf0, sup0 = limit.inf, limit.sup

    nodes: dict[tuple[int, tuple[int, ...]], ConjugacyOrbitNode] = {}
    edges: dict = {}

    def add_circuit(point: DeltaNormal, c_to_point: SignedWord) -> list:
        added = []
        circuit = circuit_of(gm, point)
        for pos, (node, c_extra) in enumerate(circuit):
            key = _key(node)
            succ = circuit[(pos + 1) % len(circuit)][0]
            edges[key] = _key(succ)
            if key in nodes:
                continue
            conjugator = free_reduce(concat_signed(c_to_point, c_extra))
            nodes[key] = ConjugacyOrbitNode(node, conjugator)
            added.append(key)
            if len(nodes) > budget:
                raise ExplosionGuard("sliding-circuit set exceeded the node budget")
        return added

    frontier = add_circuit(limit, c_entry)
    obj_divisors = {
        obj: [gm.family.elements[i] for i in idxs]
        for obj, idxs in gm.divisors.items()
    }
    while frontier:
        next_frontier: list = []
        for key in sorted(frontier):
            node = nodes[key]
            src = node.element.source
            for s in obj_divisors.get(src, ()):
                candidate = conj(ctx, node.element.signed_word(), _signed(s))
                dcand = delta_normalize(gm, candidate)
                lim, c_slide = slide_to_circuit(gm, dcand)
                if (lim.inf, lim.sup) != (inf0, sup0):
                    if lim.inf > inf0 or lim.sup < sup0:
                        raise GarsideError(
                            "sliding circuits disagree on extremal inf/sup"
                        )
                    continue
                if _key(lim) in nodes:
                    continue
                c_to_lim = free_reduce(
                    concat_signed(
                        concat_signed(node.conjugator, _signed(s)), c_slide
                    )
                )
                next_frontier.extend(add_circuit(lim, c_to_lim))
        frontier = next_frontier

    for node in nodes.values():
        if not signed_equal(
            gm, conj(ctx, g, node.conjugator), node.element.signed_word()
        ):
            raise GarsideError("recorded conjugator failed verification")

    ordered = tuple(
        sorted(nodes.values(), key=lambda n: n.element.display())
    )
    return SlidingCircuitSet(g, ordered, edges)


@dataclasses.dataclass(frozen=True)
class Yes:
    witness: SignedWord


@dataclasses.dataclass(frozen=True)
class No:
    pass


def are_conjugate(gm: GarsideMap, g: SignedWord | Word, h: SignedWord | Word):
    """
    Decide conjugacy by intersecting sliding-circuit sets; the witness is
    assembled from the recorded conjugators and re-verified on every call.
    """
    if isinstance(g, Word):
        g = _signed(g)
    if isinstance(h, Word):
        h = _signed(h)
    sg = sliding_circuit_set(gm, g)
    sh = sliding_circuit_set(gm, h)
    common = sg.keys() & sh.keys()
    if not common:
        return No()
    key = min(common)
    cg = sg.node_for(key).conjugator
    ch = sh.node_for(key).conjugator
    witness = free_reduce(concat_signed(cg, ch.inverse()))
    if not signed_equal(gm, conj(gm.ctx, g, witness), h):
        raise GarsideError("assembled conjugacy witness failed verification")
    return Yes(witness)


__all__ = [
    "ConjugacyOrbitNode",
    "SlidingCircuitSet",
    "Yes",
    "No",
    "conj",
    "signed_equal",
    "cycling",
    "decycling",
    "preferred_prefix",
    "cyclic_sliding",
    "slide_to_circuit",
    "circuit_of",
    "sliding_circuit_set",
    "are_conjugate",
]
