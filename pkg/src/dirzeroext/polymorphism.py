"""Binary fractional operations on a metric's point set and their checker."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .errors import DirZeroExtError, NotAStar, PartitionTooLarge, SymmetryViolated
from .metric import DirectedMetric

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BinaryOperation:
    points: tuple
    table: tuple  # table[i][j] = index of op(points[i], points[j])
    name: str = ""

    @classmethod
    def from_func(cls, points, fn, name=""):
        pts = tuple(points)
        pos = {p: i for i, p in enumerate(pts)}
        return cls(pts, tuple(tuple(pos[fn(a, b)] for b in pts) for a in pts), name)

    def __call__(self, a, b):
        i, j = self.points.index(a), self.points.index(b)
        return self.points[self.table[i][j]]

    def same_table(self, other) -> bool:
        return self.points == other.points and self.table == other.table


@dataclass
class FractionalPolymorphism:
    entries: list  # [(BinaryOperation, Fraction)]

    def __post_init__(self):
        if not self.entries:
            raise DirZeroExtError("fractional operation needs a nonempty support")
        for _, w in self.entries:
            if w <= 0:
                raise DirZeroExtError(f"nonpositive weight {w}")

    @property
    def total_weight(self) -> Fraction:
        return sum((w for _, w in self.entries), Fraction(0))

    def merged(self) -> "FractionalPolymorphism":
        out = []
        for op, w in self.entries:
            for i, (o2, w2) in enumerate(out):
                if o2.same_table(op):
                    out[i] = (o2, w2 + w)
                    break
            else:
                out.append((op, w))
        return FractionalPolymorphism(out)


def is_semilattice(op: BinaryOperation) -> bool:
    t = op.table
    n = len(t)
    for i in range(n):
        if t[i][i] != i:
            return False
        for j in range(i + 1, n):
            if t[i][j] != t[j][i]:
                return False
    for i, j, k in product(range(n), repeat=3):
        if t[i][t[j][k]] != t[t[i][j]][k]:
            return False
    return True


def projection(points, which=0) -> BinaryOperation:
    return BinaryOperation.from_func(points, (lambda a, b: a) if which == 0 else (lambda a, b: b),
                                     f"proj{which}")


def check_polymorphism(omega: FractionalPolymorphism, mu: DirectedMetric,
                       also_unary: bool = True):
    """Exhaustive binary (m = 2) improvement inequality for f = mu and,
    optionally, for the unary g_t = mu(., t) and h_t = mu(t, .).

    Returns (True, None) or (False, witness)."""
    pts = mu.points
    n = len(pts)
    for op, _ in omega.entries:
        if op.points != pts:
            raise DirZeroExtError("operation is defined on a different point set")
    D = [[mu(a, b) for b in pts] for a in pts]
    ents = [(op.table, w) for op, w in omega.entries]
    R = range(n)
    for a1, a2, b1, b2 in product(R, repeat=4):
        lhs = sum((w * D[t[a1][b1]][t[a2][b2]] for t, w in ents), Fraction(0))
        if lhs > HALF * (D[a1][a2] + D[b1][b2]):
            return False, ("f", (pts[a1], pts[a2]), (pts[b1], pts[b2]))
    if also_unary:
        for s in R:
            for a, b in product(R, repeat=2):
                lg = sum((w * D[t[a][b]][s] for t, w in ents), Fraction(0))
                if lg > HALF * (D[a][s] + D[b][s]):
                    return False, ("g", pts[s], (pts[a], pts[b]))
                lh = sum((w * D[s][t[a][b]] for t, w in ents), Fraction(0))
                if lh > HALF * (D[s][a] + D[s][b]):
                    return False, ("h", pts[s], (pts[a], pts[b]))
    return True, None


def build_lattice_polymorphism(L) -> FractionalPolymorphism:
    pts = L.elements
    j = BinaryOperation.from_func(pts, L.join, "join")
    m = BinaryOperation.from_func(pts, L.meet, "meet")
    return FractionalPolymorphism([(j, HALF), (m, HALF)]).merged()


# star orders ---------------------------------------------------------------

def _order_from_chains(points, relations):
    """Reflexive-transitive closure of the given strict relations."""
    leq = {(p, p) for p in points} | set(relations)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(leq), repeat=2):
            if b == c and (a, d) not in leq:
                leq.add((a, d))
                changed = True
    return leq


def _bound(points, leq, a, b, upper):
    if upper:
        cands = [z for z in points if (a, z) in leq and (b, z) in leq]
        best = [z for z in cands if all((z, o) in leq for o in cands)]
    else:
        cands = [z for z in points if (z, a) in leq and (z, b) in leq]
        best = [z for z in cands if all((o, z) in leq for o in cands)]
    return best[0] if best else None


def star_order(points, center, X, Y, extra=()):
    """Order Y < center < X plus extra strict relations."""
    rel = [(y, center) for y in Y] + [(center, x) for x in X] + list(extra)
    return _order_from_chains(points, rel)


def _op_from_order(points, leq, upper, name, override=None):
    override = override or {}

    def fn(a, b):
        if (a, b) in override:
            return override[(a, b)]
        v = _bound(points, leq, a, b, upper)
        if v is None:
            raise DirZeroExtError(f"{name}: no bound for ({a!r}, {b!r})")
        return v
    return BinaryOperation.from_func(points, fn, name)


def _check_star(mu, center, F):
    leaves = set(mu.points) - {center}
    flat = [p for S in F for p in S]
    if center not in mu.points or sorted(map(str, flat)) != sorted(map(str, leaves)) \
            or len(flat) != len(leaves):
        raise NotAStar("F must partition the leaves around the center")


def _scale(mu, center, S, down: bool):
    """Proportionality factor of the second member against the first.
    For the upper family (down=False) the factor is mu(r,s2)/mu(s1,r);
    for the lower family mu(s2,r)/mu(r,s1)."""
    if len(S) < 2:
        return Fraction(1)
    s1, s2 = S[0], S[1]
    r = center
    if not down:
        return mu(r, s2) / mu(s1, r) if mu(s1, r) != 0 else mu(s2, r) / mu(r, s1)
    return mu(s2, r) / mu(r, s1) if mu(r, s1) != 0 else mu(r, s2) / mu(s1, r)


def _meet_ops(mu, center, X, Y):
    pts = mu.points
    l = _scale(mu, center, Y, down=True)
    if len(Y) == 2:
        y1, y2 = Y
        m1 = _op_from_order(pts, star_order(pts, center, X, Y, [(y1, y2)]), False, "meet1")
        m2 = _op_from_order(pts, star_order(pts, center, X, Y, [(y2, y1)]), False, "meet2")
    else:
        m1 = m2 = _op_from_order(pts, star_order(pts, center, X, Y), False, "meet")
    return [(m1, HALF / (l + 1)), (m2, HALF * l / (l + 1))]


def build_star_polymorphism_small(mu: DirectedMetric, center, F) -> FractionalPolymorphism:
    _check_star(mu, center, F)
    if len(F) > 2 or any(len(S) > 2 for S in F):
        raise PartitionTooLarge("small star construction needs |F| <= 2 and sets of size <= 2")
    F = [tuple(S) for S in F] + [()] * (2 - len(F))
    X, Y = F[0], F[1]
    pts = mu.points
    k = _scale(mu, center, X, down=False)
    if len(X) == 2:
        x1, x2 = X
        j1 = _op_from_order(pts, star_order(pts, center, X, Y, [(x2, x1)]), True, "join1")
        j2 = _op_from_order(pts, star_order(pts, center, X, Y, [(x1, x2)]), True, "join2")
    else:
        j1 = j2 = _op_from_order(pts, star_order(pts, center, X, Y), True, "join")
    ents = _meet_ops(mu, center, X, Y) + [(j1, HALF / (k + 1)), (j2, HALF * k / (k + 1))]
    return FractionalPolymorphism(ents).merged()


def build_star_polymorphism_large(mu: DirectedMetric, center, F) -> FractionalPolymorphism:
    _check_star(mu, center, F)
    F = sorted((tuple(S) for S in F), key=len, reverse=True)
    if len(F) > 2 or (len(F) == 2 and len(F[1]) > 2):
        raise PartitionTooLarge("large star construction needs F = {X, Y} with |Y| <= 2")
    X = F[0]
    Y = F[1] if len(F) > 1 else ()
    r = center
    for x in X:
        if mu(x, r) != mu(r, x):
            raise SymmetryViolated(f"mu({x!r},{r!r}) = {mu(x, r)} != {mu(r, x)} = mu({r!r},{x!r})")
    pts = mu.points
    a = {x: mu(x, r) for x in X}
    base_leq = star_order(pts, center, X, Y)
    xpairs = list(combinations(X, 2))
    ents = _meet_ops(mu, center, X, Y)
    for choice in product((0, 1), repeat=len(xpairs)):
        over, w = {}, HALF
        for (xi, xj), c in zip(xpairs, choice):
            win = (xi, xj)[c]
            over[(xi, xj)] = over[(xj, xi)] = win
            w *= a[win] / (a[xi] + a[xj])
        name = "join_g" + "".join(map(str, choice))
        ents.append((_op_from_order(pts, base_leq, True, name, over), w))
    return FractionalPolymorphism(ents).merged()


def build_star_polymorphism(mu: DirectedMetric, center, F) -> FractionalPolymorphism:
    if any(len(S) > 2 for S in F):
        return build_star_polymorphism_large(mu, center, F)
    return build_star_polymorphism_small(mu, center, F)


def semilattice_ops(omega: FractionalPolymorphism) -> list:
    return [op for op, _ in omega.entries if is_semilattice(op)]
