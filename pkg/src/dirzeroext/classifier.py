"""Biased pairs, unbiased leaf partitions and the hardness/tractability decision tree."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .errors import NotAStar, RepeatedPoint, SamePoint, DirZeroExtError
from .graph import (UnderlyingGraph, build_underlying_graph, is_directed_orbit_invariant,
                    is_orientable, orbit_of)
from .lattice import recognize_modular_lattice
from .metric import DirectedMetric, interval, is_modular, ratio

NP_CONDITIONS = ("NotModular", "NotOrientable", "NotOrbitInvariant",
                 "BiasedNonCollinearTriple")


@dataclass
class BiasedWitness:
    kind: str
    points: tuple
    comparisons: list = field(default_factory=list)  # (z, R(x,z), R(z,y))
    direction: Optional[str] = None  # '>' or '<'
    vacuous: bool = False


def interior(mu: DirectedMetric, x, y) -> list:
    both = interval(mu, x, y) & interval(mu, y, x)
    return [z for z in mu.points if z in both and z != x and z != y]


def is_biased_pair(mu: DirectedMetric, x, y):
    if x == y:
        raise SamePoint(f"pair ({x!r}, {x!r})")
    Z = interior(mu, x, y)
    comps = [(z, ratio(mu, x, z), ratio(mu, z, y)) for z in Z]
    w = BiasedWitness("pair", (x, y), comps)
    if not Z:
        w.direction, w.vacuous = ">", True
        return True, w
    if all(a > b for _, a, b in comps):
        w.direction = ">"
        return True, w
    if all(a < b for _, a, b in comps):
        w.direction = "<"
        return True, w
    return False, w


def is_non_collinear_triple(mu: DirectedMetric, s0, s1, s2) -> bool:
    tri = (s0, s1, s2)
    if len(set(tri)) < 3:
        raise RepeatedPoint(f"triple {tri!r} repeats a point")
    for i in range(3):
        a, b = tri[i - 1], tri[(i + 1) % 3]
        if tri[i] in (interval(mu, a, b) & interval(mu, b, a)):
            return False
    return True


def find_biased_non_collinear_triple(mu: DirectedMetric):
    """(triple, pair witnesses) for the first lexicographic hit, else None."""
    for tri in combinations(mu.points, 3):
        if not is_non_collinear_triple(mu, *tri):
            continue
        ws = []
        for x, y in combinations(tri, 2):
            ok, w = is_biased_pair(mu, x, y)
            if not ok:
                break
            ws.append(w)
        else:
            return tri, ws
    return None


def is_star(G: UnderlyingGraph):
    n = len(G.vertices)
    if n < 2 or len(G.edges) != n - 1:
        return None
    for v in G.vertices:
        if len(G.adj[v]) == n - 1:
            return v
    return None


def leaves_compatible(mu: DirectedMetric, center, p, q) -> bool:
    return ratio(mu, p, center) == ratio(mu, center, q)


def unbiased_partition(mu: DirectedMetric, center, G: Optional[UnderlyingGraph] = None):
    """Minimum partition of the leaves into unbiased sets (exact search)."""
    G = G or build_underlying_graph(mu)
    if is_star(G) is None or len(G.adj[center]) != len(G.vertices) - 1:
        raise NotAStar(f"underlying graph is not a star centred at {center!r}")
    leaves = [v for v in mu.points if v != center]
    comp = {(p, q): leaves_compatible(mu, center, p, q)
            for p in leaves for q in leaves if p != q}

    def search(i, groups, limit):
        if i == len(leaves):
            return [tuple(g) for g in groups]
        v = leaves[i]
        for g in groups:
            if all(comp[(v, u)] and comp[(u, v)] for u in g):
                g.append(v)
                r = search(i + 1, groups, limit)
                g.pop()
                if r:
                    return r
        if len(groups) < limit:
            groups.append([v])
            r = search(i + 1, groups, limit)
            groups.pop()
            if r:
                return r
        return None

    for k in range(1, len(leaves) + 1):
        r = search(0, [], k)
        if r:
            return r
    return []


@dataclass
class Verdict:
    outcome: str  # 'NPHard' | 'Tractable' | 'Unknown'
    condition: Optional[str] = None
    witness: object = None
    certificate: Optional[str] = None
    payload: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)

    @property
    def tractable(self):
        return self.outcome == "Tractable"

    def summary(self) -> str:
        if self.outcome == "NPHard":
            return f"NPHard({self.condition}, {self.witness!r})"
        if self.outcome == "Tractable":
            return f"Tractable({self.certificate})"
        return "Unknown"


def _step(trace, name, result, **detail):
    trace.append({"step": len(trace) + 1, "test": name, "result": result, **detail})


def classify(mu: DirectedMetric, build_certificate: bool = True) -> Verdict:
    trace = []
    ok, tri = is_modular(mu)
    _step(trace, "modular", ok, witness=tri)
    if not ok:
        return Verdict("NPHard", "NotModular", tri, trace=trace)

    G = build_underlying_graph(mu)
    ok, e = is_orientable(G)
    _step(trace, "orientable", ok, witness=e)
    if not ok:
        return Verdict("NPHard", "NotOrientable", e, trace=trace,
                       payload={"orbit": orbit_of(G, e)})

    ok, pair = is_directed_orbit_invariant(mu, G)
    _step(trace, "orbit_invariant", ok, witness=pair)
    if not ok:
        return Verdict("NPHard", "NotOrbitInvariant", pair, trace=trace)

    hit = find_biased_non_collinear_triple(mu)
    if hit:
        vac = [w.points for w in hit[1] if w.vacuous]
        _step(trace, "no_biased_non_collinear_triple", False, witness=hit[0],
              vacuous_pairs=vac)
        return Verdict("NPHard", "BiasedNonCollinearTriple", hit[0], trace=trace,
                       payload={"pairs": hit[1]})
    _step(trace, "no_biased_non_collinear_triple", True)

    L = recognize_modular_lattice(G)
    _step(trace, "modular_lattice", L is not None,
          bottom=None if L is None else L.bottom)
    if L is not None:
        payload = {"lattice": L}
        if build_certificate:
            from .polymorphism import build_lattice_polymorphism
            payload["polymorphism"] = build_lattice_polymorphism(L)
        return Verdict("Tractable", certificate="ModularLatticeSubmodular",
                       payload=payload, trace=trace)

    center = is_star(G)
    _step(trace, "star", center is not None, center=center)
    if center is not None:
        F = unbiased_partition(mu, center, G)
        payload = {"center": center, "F": F}
        if build_certificate:
            from .polymorphism import build_star_polymorphism
            try:
                payload["polymorphism"] = build_star_polymorphism(mu, center, F)
            except DirZeroExtError as exc:
                _step(trace, "star_certificate", False, error=str(exc))
                return Verdict("Unknown", trace=trace)
        return Verdict("Tractable", certificate="StarPolymorphism",
                       payload=payload, trace=trace)
    return Verdict("Unknown", trace=trace)
