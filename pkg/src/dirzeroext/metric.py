"""Exact directed metrics and point-level predicates."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .errors import (EmptySequence, MissingEntry, NegativeEntry, SamePoint,
                     SeparationViolated, TriangleViolated, UnknownPoint,
                     ZeroDiagonalViolated, MetricError)

Point = Hashable


class _Infinity:
    """Singleton larger than every finite rational."""
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("dirzeroext.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def to_fraction(v) -> Fraction:
    """Accept int, Fraction, or a 'p/q' / integer string. Floats are refused."""
    if isinstance(v, bool):
        raise MetricError(f"boolean is not a rational: {v!r}")
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        s = v.strip()
        try:
            if "." in s or "e" in s.lower():
                raise ValueError
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise MetricError(f"not an exact rational: {v!r}") from None
    raise MetricError(f"not an exact rational: {v!r} ({type(v).__name__})")


@dataclass(frozen=True)
class DirectedMetric:
    points: tuple
    dist: Mapping = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})

    def __call__(self, x, y) -> Fraction:
        return self.dist[(x, y)]

    def __len__(self):
        return len(self.points)

    def index(self, p) -> int:
        try:
            return self._index[p]
        except KeyError:
            raise UnknownPoint(f"unknown point {p!r}") from None

    def check(self, *ps):
        for p in ps:
            if p not in self._index:
                raise UnknownPoint(f"unknown point {p!r}")

    def max_distance(self) -> Fraction:
        return max(self.dist.values(), default=Fraction(0))

    def __eq__(self, other):
        return (isinstance(other, DirectedMetric) and self.points == other.points
                and all(self.dist[k] == other.dist[k] for k in self.dist))

    def __hash__(self):
        return hash((self.points, tuple(self.dist[(x, y)] for x in self.points
                                        for y in self.points)))

    def matrix(self):
        return [[self.dist[(x, y)] for y in self.points] for x in self.points]


def validate_metric(table, points: Optional[Sequence] = None) -> DirectedMetric:
    """Build a DirectedMetric from a pair-keyed mapping or a nested
    row mapping / square matrix. Raises on the first violated axiom."""
    if points is None:
        if isinstance(table, Mapping) and table and all(
                isinstance(k, tuple) and len(k) == 2 for k in table):
            seen = []
            for (x, y) in table:
                for p in (x, y):
                    if p not in seen:
                        seen.append(p)
            points = seen
        elif isinstance(table, Mapping):
            points = list(table)
        else:
            raise MetricError("points must be given for a matrix table")
    points = tuple(points)
    if not points:
        raise MetricError("metric needs at least one point")
    if len(set(points)) != len(points):
        raise MetricError("duplicate point names")

    def lookup(x, y, i, j):
        try:
            if isinstance(table, Mapping):
                if (x, y) in table:
                    return table[(x, y)]
                return table[x][y]
            return table[i][j]
        except (KeyError, IndexError, TypeError):
            raise MissingEntry(x, y) from None

    dist = {}
    for i, x in enumerate(points):
        for j, y in enumerate(points):
            dist[(x, y)] = to_fraction(lookup(x, y, i, j))
    for x in points:
        for y in points:
            if dist[(x, y)] < 0:
                raise NegativeEntry(x, y, dist[(x, y)])
    for x in points:
        if dist[(x, x)] != 0:
            raise ZeroDiagonalViolated(x)
    for x, y in combinations(points, 2):
        if dist[(x, y)] + dist[(y, x)] == 0:
            raise SeparationViolated(x, y)
    for x, y, z in product(points, repeat=3):
        if dist[(x, y)] + dist[(y, z)] < dist[(x, z)]:
            raise TriangleViolated(x, y, z)
    return DirectedMetric(points, dist)


def interval(mu: DirectedMetric, x, y) -> frozenset:
    mu.check(x, y)
    d = mu(x, y)
    return frozenset(z for z in mu.points if mu(x, z) + mu(z, y) == d)


def ratio(mu: DirectedMetric, x, y):
    mu.check(x, y)
    if x == y:
        raise SamePoint(f"ratio of {x!r} with itself")
    back = mu(y, x)
    if back == 0:
        return INF
    return mu(x, y) / back


def is_median(mu: DirectedMetric, m, s0, s1, s2) -> bool:
    tri = (s0, s1, s2)
    return all(mu(tri[i], tri[j]) == mu(tri[i], m) + mu(m, tri[j])
               for i in range(3) for j in range(3) if i != j)


def find_median(mu: DirectedMetric, s0, s1, s2):
    mu.check(s0, s1, s2)
    for m in mu.points:
        if is_median(mu, m, s0, s1, s2):
            return m
    return None


def is_modular(mu: DirectedMetric):
    """(True, None) or (False, first medianless triple)."""
    for tri in combinations(mu.points, 3):
        if find_median(mu, *tri) is None:
            return False, tri
    return True, None


def is_mu_shortest(mu: DirectedMetric, seq: Sequence) -> bool:
    if len(seq) == 0:
        raise EmptySequence("sequence must be nonempty")
    mu.check(*seq)
    total = sum((mu(a, b) for a, b in zip(seq, seq[1:])), Fraction(0))
    return total == mu(seq[0], seq[-1])


def delta(mu: DirectedMetric, x, y, z) -> Fraction:
    return (mu(x, y) + mu(y, x) + mu(y, z) + mu(z, y) + mu(z, x) + mu(x, z))


def minimal_medianless_triple(mu: DirectedMetric):
    best, best_val = None, None
    for tri in combinations(mu.points, 3):
        if find_median(mu, *tri) is None:
            v = delta(mu, *tri)
            if best_val is None or v < best_val:
                best, best_val = tri, v
    return best


def metric_from_graph(vertices: Iterable, edges: Iterable, lengths=None) -> DirectedMetric:
    """Shortest-path directed metric of a graph. `lengths` maps oriented
    edges to rationals; missing orientations default to 1."""
    vertices = tuple(vertices)
    lengths = dict(lengths or {})
    w = {}
    for u, v in edges:
        w[(u, v)] = to_fraction(lengths.get((u, v), 1))
        w[(v, u)] = to_fraction(lengths.get((v, u), 1))
    d = {}
    for x in vertices:
        for y in vertices:
            d[(x, y)] = Fraction(0) if x == y else w.get((x, y))
    for k in vertices:
        for i in vertices:
            if d[(i, k)] is None:
                continue
            for j in vertices:
                if d[(k, j)] is None:
                    continue
                c = d[(i, k)] + d[(k, j)]
                if d[(i, j)] is None or c < d[(i, j)]:
                    d[(i, j)] = c
    return validate_metric(d, vertices)
