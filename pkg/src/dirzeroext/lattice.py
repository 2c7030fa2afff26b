"""Recognition of modular lattices from covering graphs, and submodularity."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Optional

from .errors import HypothesesNotMet
from .graph import UnderlyingGraph, build_underlying_graph, is_directed_orbit_invariant


@dataclass
class ModularLattice:
    elements: tuple
    bottom: object
    top: object
    rank: dict
    up: dict = field(repr=False)       # element -> frozenset of elements >= it
    join_table: dict = field(repr=False)
    meet_table: dict = field(repr=False)
    covers: frozenset = field(repr=False)  # (a, b): b covers a

    def leq(self, a, b) -> bool:
        return b in self.up[a]

    def join(self, a, b):
        return self.join_table[(a, b)]

    def meet(self, a, b):
        return self.meet_table[(a, b)]

    def covered_by(self, a, b) -> bool:
        return (a, b) in self.covers

    def __len__(self):
        return len(self.elements)


def join(L: ModularLattice, a, b):
    return L.join(a, b)


def meet(L: ModularLattice, a, b):
    return L.meet(a, b)


def _extremum(cands, leq_fn, least=True):
    for c in cands:
        if all((leq_fn(c, o) if least else leq_fn(o, c)) for o in cands):
            return c
    return None


def lattice_from_order(elements, covers) -> Optional[ModularLattice]:
    """Build the lattice from a cover relation; None if some join or meet
    is missing or the rank identity fails."""
    elements = tuple(elements)
    upn = {e: [] for e in elements}
    downn = {e: [] for e in elements}
    for a, b in covers:
        upn[a].append(b)
        downn[b].append(a)
    bottoms = [e for e in elements if not downn[e]]
    tops = [e for e in elements if not upn[e]]
    if len(bottoms) != 1 or len(tops) != 1:
        return None
    rank = {bottoms[0]: 0}
    frontier = [bottoms[0]]
    while frontier:
        nxt = []
        for a in frontier:
            for b in upn[a]:
                if b in rank:
                    if rank[b] != rank[a] + 1:
                        return None
                else:
                    rank[b] = rank[a] + 1
                    nxt.append(b)
        frontier = nxt
    if len(rank) != len(elements):
        return None
    up = {}
    for a in sorted(elements, key=lambda e: -rank[e]):
        s = {a}
        for b in upn[a]:
            s |= up[b]
        up[a] = frozenset(s)
    down = {e: frozenset(x for x in elements if e in up[x]) for e in elements}
    leq = lambda a, b: b in up[a]
    jt, mt = {}, {}
    for a in elements:
        for b in elements:
            if (b, a) in jt:
                jt[(a, b)], mt[(a, b)] = jt[(b, a)], mt[(b, a)]
                continue
            ub = [e for e in elements if e in up[a] and e in up[b]]
            j = _extremum(ub, leq, least=True)
            lb = [e for e in elements if e in down[a] and e in down[b]]
            m = _extremum(lb, leq, least=False)
            if j is None or m is None:
                return None
            if rank[a] + rank[b] != rank[j] + rank[m]:
                return None
            jt[(a, b)], mt[(a, b)] = j, m
    return ModularLattice(elements, bottoms[0], tops[0], rank, up, jt, mt,
                          frozenset(covers))


def _try_bottom(G: UnderlyingGraph, v0) -> Optional[ModularLattice]:
    covers = []
    for u, v in G.edges:
        du, dv = G.d(v0, u), G.d(v0, v)
        if du == dv:
            return None
        covers.append((u, v) if du < dv else (v, u))
    return lattice_from_order(G.vertices, covers)


def recognize_all(G: UnderlyingGraph) -> list:
    out = []
    for v0 in G.vertices:
        L = _try_bottom(G, v0)
        if L is not None and L.bottom == v0:
            out.append(L)
    return out


def recognize_modular_lattice(G: UnderlyingGraph) -> Optional[ModularLattice]:
    for v0 in G.vertices:
        L = _try_bottom(G, v0)
        if L is not None and L.bottom == v0:
            return L
    return None


def two_covered_pairs(L: ModularLattice) -> list:
    return [(a, b) for a, b in combinations(L.elements, 2)
            if L.covered_by(a, L.join(a, b)) and L.covered_by(b, L.join(a, b))]


def product_lattice(L1: ModularLattice, L2: ModularLattice) -> ModularLattice:
    elems = tuple(product(L1.elements, L2.elements))
    rank = {(a, b): L1.rank[a] + L2.rank[b] for a, b in elems}
    up = {(a, b): frozenset(product(L1.up[a], L2.up[b])) for a, b in elems}
    jt, mt = {}, {}
    for x in elems:
        for y in elems:
            jt[(x, y)] = (L1.join(x[0], y[0]), L2.join(x[1], y[1]))
            mt[(x, y)] = (L1.meet(x[0], y[0]), L2.meet(x[1], y[1]))
    covers = set()
    for a, b in L1.covers:
        for c in L2.elements:
            covers.add(((a, c), (b, c)))
    for c, d in L2.covers:
        for a in L1.elements:
            covers.add(((a, c), (a, d)))
    return ModularLattice(elems, (L1.bottom, L2.bottom), (L1.top, L2.top),
                          rank, up, jt, mt, frozenset(covers))


@dataclass
class SubmodularReport:
    full_ok: bool
    two_covered_ok: bool
    witness: Optional[tuple] = None  # first violating pair in full mode

    @property
    def agree(self) -> bool:
        return self.full_ok == self.two_covered_ok

    @property
    def ok(self) -> bool:
        return self.full_ok and self.two_covered_ok


def _violates(f, L, a, b) -> bool:
    return f(a) + f(b) < f(L.join(a, b)) + f(L.meet(a, b))


def verify_submodular(f, L: ModularLattice, pairs=None) -> SubmodularReport:
    """Check f(a)+f(b) >= f(a v b)+f(a ^ b) over all pairs and over the
    2-covered pairs only. `f` may be a mapping or a callable."""
    if not callable(f):
        table = f
        f = table.__getitem__
    witness = None
    for a, b in combinations(L.elements, 2):
        if _violates(f, L, a, b):
            witness = (a, b)
            break
    if pairs is None:
        pairs = two_covered_pairs(L)
    two_ok = not any(_violates(f, L, a, b) for a, b in pairs)
    return SubmodularReport(witness is None, two_ok, witness)


def covering_graph_matches(G: UnderlyingGraph, L: ModularLattice) -> bool:
    es = {frozenset(e) for e in G.edges}
    return es == {frozenset(c) for c in L.covers} and set(G.vertices) == set(L.elements)


def verify_product_submodularity(mu, L: Optional[ModularLattice] = None,
                                 G: Optional[UnderlyingGraph] = None) -> SubmodularReport:
    """mu viewed as a function on L x L must be submodular when the
    underlying graph covers L and mu is orbit-invariant."""
    G = G or build_underlying_graph(mu)
    if L is None:
        L = recognize_modular_lattice(G)
        if L is None:
            raise HypothesesNotMet("underlying graph is not a lattice covering graph")
    if not covering_graph_matches(G, L):
        raise HypothesesNotMet("lattice covering graph differs from the underlying graph")
    if not is_directed_orbit_invariant(mu, G)[0]:
        raise HypothesesNotMet("metric is not directed orbit-invariant")
    P = product_lattice(L, L)
    return verify_submodular(lambda ab: mu(ab[0], ab[1]), P)


def maximal_chains(L: ModularLattice, a, b) -> list:
    """All saturated chains from a to b (a <= b)."""
    if a == b:
        return [(a,)]
    out = []
    for x, y in L.covers:
        if x == a and L.leq(y, b):
            for rest in maximal_chains(L, y, b):
                out.append((a,) + rest)
    return out
