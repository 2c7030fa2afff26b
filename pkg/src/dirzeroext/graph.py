"""Underlying graph of a directed metric and its orbit structure."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Optional

from .errors import (DisconnectedUnderlyingGraph, EmptySet, HypothesesNotMet,
                     NotAPath, UnknownPoint)
from .metric import DirectedMetric, is_modular, is_mu_shortest


@dataclass(frozen=True)
class DirectedOrbit:
    id: int
    members: tuple  # oriented edges, sorted by vertex order


@dataclass(frozen=True)
class OrbitVaryingCycle:
    cycle: tuple
    k: Fraction


@dataclass
class UnderlyingGraph:
    vertices: tuple
    edges: tuple  # (u, v) with u before v in vertex order
    adj: dict = field(repr=False)
    dist: dict = field(repr=False)
    _orbits: Optional[list] = field(default=None, repr=False)
    _orbit_of: Optional[dict] = field(default=None, repr=False)

    @property
    def index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def oriented_edges(self):
        out = []
        for u, v in self.edges:
            out += [(u, v), (v, u)]
        pos = self.index
        return sorted(out, key=lambda e: (pos[e[0]], pos[e[1]]))

    def has_edge(self, u, v) -> bool:
        return v in self.adj.get(u, ())

    def d(self, x, y) -> int:
        return self.dist[(x, y)]


def from_edges(vertices, edges) -> UnderlyingGraph:
    """Plain graph constructor (used for modularity tests of abstract graphs)."""
    vertices = tuple(vertices)
    pos = {v: i for i, v in enumerate(vertices)}
    adj = {v: [] for v in vertices}
    es = set()
    for u, v in edges:
        if u == v:
            continue
        if pos[u] > pos[v]:
            u, v = v, u
        es.add((u, v))
    for u, v in sorted(es, key=lambda e: (pos[e[0]], pos[e[1]])):
        adj[u].append(v)
        adj[v].append(u)
    for v in vertices:
        adj[v].sort(key=pos.__getitem__)
    dist = {}
    for s in vertices:
        seen = {s: 0}
        q = deque([s])
        while q:
            a = q.popleft()
            for b in adj[a]:
                if b not in seen:
                    seen[b] = seen[a] + 1
                    q.append(b)
        if len(seen) != len(vertices):
            missing = next(v for v in vertices if v not in seen)
            raise DisconnectedUnderlyingGraph(
                f"no path between {s!r} and {missing!r}")
        for t, dv in seen.items():
            dist[(s, t)] = dv
    edges = tuple(sorted(es, key=lambda e: (pos[e[0]], pos[e[1]])))
    return UnderlyingGraph(vertices, edges, {v: tuple(a) for v, a in adj.items()}, dist)


def build_underlying_graph(mu: DirectedMetric) -> UnderlyingGraph:
    pts = mu.points
    edges = []
    for x, y in combinations(pts, 2):
        others = [z for z in pts if z != x and z != y]
        fwd = all(mu(x, y) < mu(x, z) + mu(z, y) for z in others)
        bwd = all(mu(y, x) < mu(y, z) + mu(z, x) for z in others)
        if fwd or bwd:
            edges.append((x, y))
    return from_edges(pts, edges)


def graph_distance(G: UnderlyingGraph, x, y) -> int:
    try:
        return G.dist[(x, y)]
    except KeyError:
        raise UnknownPoint(f"unknown vertex in ({x!r}, {y!r})") from None


def is_bipartite(G: UnderlyingGraph):
    root = G.vertices[0]
    for u, v in G.edges:
        if G.d(root, u) == G.d(root, v):
            return False, (u, v)
    return True, None


def is_modular_graph(G: UnderlyingGraph):
    """(True, None) or (False, (reason, witness))."""
    ok, w = is_bipartite(G)
    if not ok:
        return False, ("not_bipartite", w)
    for p, q in product(G.vertices, repeat=2):
        dpq = G.d(p, q)
        if dpq < 2:
            continue
        closer = [a for a in G.adj[p] if G.d(a, q) == dpq - 1]
        for p1, p2 in combinations(closer, 2):
            common = set(G.adj[p1]) & set(G.adj[p2])
            if not any(G.d(w, q) == dpq - 2 for w in common):
                return False, ("quadrangle", (p, q, p1, p2))
    return True, None


def four_cycles(G: UnderlyingGraph):
    """All 4-cycles (a, b, c, d) as vertex sequences, every rotation and
    direction included, in lexicographic vertex-index order."""
    pos = G.index
    out = []
    for a in G.vertices:
        for b in G.adj[a]:
            for c in G.adj[b]:
                if c == a:
                    continue
                for d in G.adj[c]:
                    if d == b or d == a:
                        continue
                    if G.has_edge(d, a):
                        out.append((a, b, c, d))
    out.sort(key=lambda t: tuple(pos[v] for v in t))
    return out


class _UF:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def directed_orbits(G: UnderlyingGraph) -> list:
    if G._orbits is not None:
        return G._orbits
    oe = G.oriented_edges
    uf = _UF(oe)
    # cycle (p, q, q', p'): edge (p, q) is projective to (p', q')
    for p, q, q2, p2 in four_cycles(G):
        uf.union((p, q), (p2, q2))
    groups = {}
    for e in oe:
        groups.setdefault(uf.find(e), []).append(e)
    ordered = sorted(groups.values(), key=lambda m: oe.index(m[0]))
    orbits = [DirectedOrbit(i, tuple(m)) for i, m in enumerate(ordered)]
    G._orbits = orbits
    G._orbit_of = {e: o.id for o in orbits for e in o.members}
    return orbits


def orbit_of(G: UnderlyingGraph, e) -> int:
    directed_orbits(G)
    return G._orbit_of[e]


def is_orientable(G: UnderlyingGraph):
    directed_orbits(G)
    for u, v in G.edges:
        if G._orbit_of[(u, v)] == G._orbit_of[(v, u)]:
            return False, (u, v)
    return True, None


def orientation(G: UnderlyingGraph):
    """Consistent orientation of an orientable graph: for each pair of
    mutually reversed orbits, keep the one found first."""
    ok, w = is_orientable(G)
    if not ok:
        return None
    chosen, banned = set(), set()
    for o in directed_orbits(G):
        if o.id in banned:
            continue
        chosen.add(o.id)
        u, v = o.members[0]
        banned.add(G._orbit_of[(v, u)])
    return [e for e in G.oriented_edges if G._orbit_of[e] in chosen]


def is_directed_orbit_invariant(mu: DirectedMetric, G: UnderlyingGraph):
    for o in directed_orbits(G):
        first = o.members[0]
        for e in o.members[1:]:
            if mu(*e) != mu(*first):
                return False, (first, e)
    return True, None


def cycle_difference(mu: DirectedMetric, cyc):
    p, q, r, s = cyc
    diffs = (mu(p, q) - mu(s, r), mu(r, s) - mu(q, p),
             mu(p, s) - mu(q, r), mu(r, q) - mu(s, p))
    if diffs[0] != 0 and all(d == diffs[0] for d in diffs):
        return diffs[0]
    return None


def find_orbit_varying_modular_cycle(mu: DirectedMetric, G: UnderlyingGraph):
    for cyc in four_cycles(G):
        k = cycle_difference(mu, cyc)
        if k is not None:
            return OrbitVaryingCycle(cyc, k)
    return None


def gate(G: UnderlyingGraph, X, p):
    X = list(X)
    if not X:
        raise EmptySet("gate of an empty set")
    found = [g for g in X if all(G.d(p, q) == G.d(p, g) + G.d(g, q) for q in X)]
    if not found:
        return None
    assert len(found) == 1, f"gate not unique: {found}"
    return found[0]


def is_convex(G: UnderlyingGraph, X) -> bool:
    X = set(X)
    for a, b in combinations(X, 2):
        for z in G.vertices:
            if z not in X and G.d(a, z) + G.d(z, b) == G.d(a, b):
                return False
    return True


def is_d_shortest(G: UnderlyingGraph, seq) -> bool:
    total = sum(G.d(a, b) for a, b in zip(seq, seq[1:]))
    return total == G.d(seq[0], seq[-1])


@dataclass
class CorrespondenceReport:
    checked: int = 0
    forward: bool = False
    converse: bool = False
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.counterexamples


def check_shortest_correspondence(mu: DirectedMetric, G: UnderlyingGraph,
                                  bound: int = 4, direction: str = "both"):
    """Exhaustive over all point sequences with up to `bound` points.

    forward: mu modular; mu-shortest implies reversed mu-shortest and
    d-shortest. converse: mu orbit-invariant and G modular; d-shortest
    implies mu-shortest. direction='auto' runs whichever applies."""
    fwd_ok = is_modular(mu)[0]
    conv_ok = is_directed_orbit_invariant(mu, G)[0] and is_modular_graph(G)[0]
    want_fwd = direction in ("forward", "both") or (direction == "auto" and fwd_ok)
    want_conv = direction in ("converse", "both") or (direction == "auto" and conv_ok)
    if want_fwd and not fwd_ok:
        raise HypothesesNotMet("forward direction needs a modular metric")
    if want_conv and not conv_ok:
        raise HypothesesNotMet(
            "converse direction needs orbit invariance and a modular graph")
    rep = CorrespondenceReport(forward=want_fwd, converse=want_conv)
    for n in range(1, bound + 1):
        for seq in product(mu.points, repeat=n):
            rep.checked += 1
            ms = is_mu_shortest(mu, seq)
            if want_fwd and ms:
                if not is_mu_shortest(mu, seq[::-1]):
                    rep.counterexamples.append(("reversal", seq))
                if not is_d_shortest(G, seq):
                    rep.counterexamples.append(("mu_to_d", seq))
            if want_conv and not ms and is_d_shortest(G, seq):
                rep.counterexamples.append(("d_to_mu", seq))
    return rep


def orbit_count_on_path(G: UnderlyingGraph, orbit: DirectedOrbit, path) -> int:
    path = list(path)
    members = set(orbit.members)
    n = 0
    for a, b in zip(path, path[1:]):
        if not G.has_edge(a, b):
            raise NotAPath(f"{a!r} and {b!r} are not adjacent")
        if (a, b) in members:
            n += 1
    return n


def simple_paths(G: UnderlyingGraph, x, y):
    """Every simple path from x to y (exponential; small graphs only)."""
    out = []
    stack = [(x, [x])]
    while stack:
        v, p = stack.pop()
        if v == y:
            out.append(tuple(p))
            continue
        for w in G.adj[v]:
            if w not in p:
                stack.append((w, p + [w]))
    return out
