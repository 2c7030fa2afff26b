"""Hardness gadgets, their brute-force certification, and the MAX CUT reduction."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from typing import Optional

from .classifier import find_biased_non_collinear_triple, is_biased_pair
from .errors import (AmbiguousDirection, ConditionFailed, GadgetError, GadgetNotVerified,
                     GraphOrientable, MetricIsModular, NoBiasedTriple, NoOrbitVaryingCycle,
                     NoWitnessSequence)
from .graph import (build_underlying_graph, find_orbit_varying_modular_cycle, four_cycles,
                    is_orientable)
from .metric import DirectedMetric, is_modular, minimal_medianless_triple
from .solver import ZeroExtInstance, brute_force, compile_instance

MAX_ESCALATIONS = 8


@dataclass
class Gadget:
    """Cost = sum over layers of (product of the layer's N factors) * layer cost."""
    kind: str                 # 'pair' or 'sextuple'
    case: str
    metric: DirectedMetric
    variables: tuple
    layers: list              # [(name, factor names, {(u, v): weight})]
    N: dict                   # factor name -> Fraction
    roles: dict               # pair: s,t,x,y ; sextuple: triple, z
    expected_delta: Optional[Fraction] = None
    meta: dict = field(default_factory=dict)

    def coefficient(self, factors) -> Fraction:
        c = Fraction(1)
        for f in factors:
            c *= self.N[f]
        return c

    def cost(self) -> dict:
        out = {}
        for _, factors, layer in self.layers:
            coef = self.coefficient(factors)
            for key, w in layer.items():
                out[key] = out.get(key, Fraction(0)) + coef * w
        return {k: v for k, v in out.items() if v != 0}

    @property
    def instance(self) -> ZeroExtInstance:
        return ZeroExtInstance(self.metric, self.variables, self.cost())

    def scaled(self, factor=2) -> "Gadget":
        return replace(self, N={k: v * factor for k, v in self.N.items()},
                       meta=dict(self.meta))

    @property
    def aux(self):
        T = set(self.metric.points)
        return tuple(v for v in self.variables if v not in T)

    @property
    def report(self):
        return self.meta.get("report")

    @property
    def tau_star(self):
        return None if self.report is None else self.report.tau_star

    @property
    def delta(self):
        return None if self.report is None else self.report.delta


class PairGadget(Gadget):
    """Roles s, t (terminals) and x, y (variables) for the pair condition."""


class SextupleGadget(Gadget):
    """Roles triple (s0, s1, s2) and z (six variables) for the sextuple condition."""


def _fresh(names, taken):
    taken = set(map(str, taken))
    out = []
    for n in names:
        m = n
        while m in taken:
            m = "_" + m
        taken.add(m)
        out.append(m)
    return out


def _add(layer, u, v, w):
    w = Fraction(w)
    if w != 0 and u != v:
        layer[(u, v)] = layer.get((u, v), Fraction(0)) + w


def _both(layer, u, v, w):
    _add(layer, u, v, w)
    _add(layer, v, u, w)


def _lcm_den(values) -> int:
    d = 1
    for v in values:
        d = math.lcm(d, Fraction(v).denominator)
    return d


def layered_bounds(mu: DirectedMetric, layers) -> dict:
    """Domination factors for a chain of layers (lowest first, layer 0 has
    no factor): N_j = 1 + 2 D_j U_{j-1}, where U_{j-1} bounds the total of
    all lower layers and 1/D_j is the smallest possible gap of layer j."""
    maxmu = mu.max_distance()
    den_mu = _lcm_den(mu.dist.values())
    N, U = {}, Fraction(0)
    for name, factors, layer in layers:
        if factors:
            (f,) = factors
            D = _lcm_den(layer.values()) * den_mu
            N[f] = 1 + 2 * D * U
            U += N[f] * sum(layer.values()) * maxmu
        else:
            U += sum(layer.values()) * maxmu
    return N


# verification --------------------------------------------------------------

@dataclass
class PairReport:
    taus: dict
    tau_star: Fraction
    delta: Optional[Fraction]
    ok: bool
    failed: Optional[tuple] = None   # (clause, witness)
    optimal: frozenset = frozenset()
    second: frozenset = frozenset()

    def signature(self):
        return (self.ok, self.optimal, self.second)


@dataclass
class SextupleReport:
    taus: dict
    tau_star: Fraction
    delta: Optional[Fraction]
    ok: bool
    failed: Optional[tuple] = None
    optimal: frozenset = frozenset()

    def signature(self):
        return (self.ok, self.optimal)


def verify_pair_gadget(g: Gadget, budget=None, raise_on_fail: bool = True) -> PairReport:
    inst = g.instance
    T = g.metric.points
    s, t, x, y = (g.roles[k] for k in "stxy")
    taus = {(a, b): brute_force(inst, {x: a, y: b}, budget)[0] for a in T for b in T}
    tstar = min(taus.values())
    optimal = frozenset(k for k, v in taus.items() if v == tstar)
    failed = None
    delta = taus[(s, s)] - tstar
    if taus[(s, t)] != tstar or taus[(t, s)] != tstar:
        bad = (s, t) if taus[(s, t)] != tstar else (t, s)
        failed = ("i", bad)
    elif delta <= 0:
        failed = ("ii", (s, s))
    elif taus[(t, t)] != tstar + delta:
        failed = ("ii", (t, t))
    else:
        for k in sorted(taus, key=lambda p: (T.index(p[0]), T.index(p[1]))):
            if k in ((s, t), (t, s), (s, s), (t, t)):
                continue
            if taus[k] < tstar + delta:
                failed = ("iii", k)
                break
    second = frozenset(k for k, v in taus.items() if delta is not None and v == tstar + delta)
    rep = PairReport(taus, tstar, delta if failed is None else None, failed is None,
                     failed, optimal, second)
    if failed and raise_on_fail:
        raise ConditionFailed(*failed)
    return rep


def designated_sextuples(triple):
    s = triple
    choices = [(s[(j - 1) % 3], s[(j + 1) % 3]) for j in range(6)]
    return frozenset(product(*choices))


def verify_sextuple_gadget(g: Gadget, budget=None, raise_on_fail: bool = True) -> SextupleReport:
    inst = g.instance
    T = g.metric.points
    z = g.roles["z"]
    des = designated_sextuples(g.roles["triple"])
    comp = compile_instance(inst)
    taus = {}
    if all(v in z for v in g.aux) and not comp.pair:
        # the six z are independent: tau is a sum of unary tables
        pos = {a: i for i, a in enumerate(comp.labels)}
        U = [comp.unary.get(v) for v in z]
        for lab in product(T, repeat=6):
            taus[lab] = comp.const + sum((u[pos[a]] for u, a in zip(U, lab) if u is not None),
                                         Fraction(0))
    else:
        for lab in product(T, repeat=6):
            taus[lab] = brute_force(inst, dict(zip(z, lab)), budget)[0]
    tstar = min(taus.values())
    optimal = frozenset(k for k, v in taus.items() if v == tstar)
    failed = None
    bad = next((d for d in sorted(des, key=_lexkey(T)) if taus[d] != tstar), None)
    if bad is not None:
        failed = ("i", bad)
        delta = None
    else:
        rest = [v for k, v in taus.items() if k not in des]
        delta = min(rest) - tstar if rest else None
        if delta is not None and delta <= 0:
            w = next(k for k in sorted(taus, key=_lexkey(T))
                     if k not in des and taus[k] - tstar == delta)
            failed = ("ii", w)
    rep = SextupleReport(taus, tstar, delta if failed is None else None, failed is None,
                         failed, optimal)
    if failed and raise_on_fail:
        raise ConditionFailed(*failed)
    return rep


def _lexkey(T):
    return lambda tup: tuple(T.index(a) for a in tup)


def verify(g: Gadget, budget=None, raise_on_fail=True):
    if g.kind == "pair":
        return verify_pair_gadget(g, budget, raise_on_fail)
    return verify_sextuple_gadget(g, budget, raise_on_fail)


def escalate(g: Gadget, budget=None) -> Gadget:
    """Double every N until the verdict and the optimal-fixing set agree
    for two consecutive values; returns the first stable gadget."""
    rep = verify(g, budget, raise_on_fail=False)
    history = [dict(g.N)]
    for _ in range(MAX_ESCALATIONS):
        g2 = g.scaled(2)
        rep2 = verify(g2, budget, raise_on_fail=False)
        if rep.signature() == rep2.signature():
            g.meta["N_history"] = history
            g.meta["report"] = rep
            if not rep.ok:
                raise ConditionFailed(*rep.failed)
            return g
        g, rep = g2, rep2
        history.append(dict(g.N))
    raise GadgetNotVerified("optimal-fixing set did not stabilise under N doubling")


# builders --------------------------------------------------------------------

def _round(mu, a, b):
    return mu(a, b) + mu(b, a)


def build_nonmodular_gadget(mu: DirectedMetric, triple=None, a_override=None,
                            escalate_N: bool = True, budget=None) -> Gadget:
    if triple is None:
        if is_modular(mu)[0]:
            raise MetricIsModular("metric is modular; no medianless triple")
        triple = minimal_medianless_triple(mu)
    s = tuple(triple)
    z = tuple(_fresh([f"z{j}" for j in range(6)], mu.points))
    m = [_round(mu, s[(i - 1) % 3], s[(i + 1) % 3]) for i in range(3)]
    a = [(m[(i - 1) % 3] + m[(i + 1) % 3] - m[i]) / (m[(i - 1) % 3] * m[(i + 1) % 3])
         for i in range(3)]
    if a_override is not None:
        a = [Fraction(v) for v in a_override]
    c, cp = {}, {}
    for j in range(6):
        _both(c, s[(j - 1) % 3], z[j], 1)
        _both(c, s[(j + 1) % 3], z[j], 1)
        for i in range(3):
            _both(cp, s[i], z[j], a[i])
    layers = [("c'", (), cp), ("c", ("N",), c)]
    g = SextupleGadget("sextuple", "nonmodular", mu, mu.points + z, layers,
               layered_bounds(mu, layers), {"triple": s, "z": z},
               meta={"a": a, "mu_round": m})
    if escalate_N:
        g = escalate(g, budget)
    return g


def hexagon_weights(mu, triple):
    s = triple
    m = [_round(mu, s[(i - 1) % 3], s[(i + 1) % 3]) for i in range(3)]
    h = [(m[(i - 1) % 3] + m[(i + 1) % 3] - m[i]) / 2 for i in range(3)]
    return m, h


def compose_hexagon(g: Gadget, escalate_N: bool = True, budget=None,
                    N: Optional[Fraction] = None) -> Gadget:
    """Pair gadget from a sextuple gadget satisfying the sextuple pattern."""
    rep = g.meta.get("report")
    if rep is None or not rep.ok:
        rep = verify_sextuple_gadget(g, budget, raise_on_fail=False)
        if not rep.ok:
            raise GadgetNotVerified(f"sextuple gadget fails clause {rep.failed}")
    mu = g.metric
    s, z = g.roles["triple"], g.roles["z"]
    m, h = hexagon_weights(mu, s)
    rho = 2 * (h[0] * h[1] + h[1] * h[2] + h[2] * h[0])
    alpha = 2 * min(x * x for x in h)
    if alpha <= 0:
        raise GadgetError("some h_i is zero; the hexagon composition has no separation")
    # rotating the triple by r shifts z indices by 4r; put the smallest h at s_0
    r = min(range(3), key=lambda i: (h[i], i))
    hp = {}
    for i in range(6):
        _both(hp, z[i], z[(i + 1) % 6], h[(i - 1) % 3])
    maxmu = mu.max_distance()
    if N is None:
        N = 1 / rep.delta + 4 * sum(h) * maxmu / rep.delta
    layers = [("hex", (), hp)] + [(name, ("Nhex",) + tuple(f), lay)
                                  for name, f, lay in g.layers]
    Ns = dict(g.N)
    Ns["Nhex"] = Fraction(N)
    roles = {"s": s[r], "t": s[(r + 2) % 3], "x": z[(1 + 4 * r) % 6],
             "y": z[(4 + 4 * r) % 6], "triple": s, "z": z}
    pg = PairGadget("pair", g.case + "+hexagon", mu, g.variables, layers, Ns, roles,
                expected_delta=alpha,
                meta={"h": h, "rho": rho, "alpha": alpha, "rotation": r,
                      "sextuple_delta": rep.delta, "sextuple_tau": rep.tau_star})
    if escalate_N:
        pg = escalate(pg, budget)
    return pg


def normalized_cycle(mu, G=None):
    G = G or build_underlying_graph(mu)
    w = find_orbit_varying_modular_cycle(mu, G)
    if w is None:
        raise NoOrbitVaryingCycle("no directed orbit-varying modular cycle")
    p, q, r, s = w.cycle
    if w.k > 0:
        return (p, q, r, s), w.k
    return (q, p, s, r), -w.k


def orbit_varying_c3(mu, cyc, k):
    s0, s1, s2, s3 = cyc
    m10, m12, m30, m32 = mu(s1, s0), mu(s1, s2), mu(s3, s0), mu(s3, s2)
    return {
        ("y0", s0): k * k + m32 * k + m32 * m12,
        ("y0", s1): (m10 + m12) * k + m10 * m12,
        ("y0", s2): k * k + m10 * k + m10 * m30,
        ("y0", s3): (m32 + m30) * k + m32 * m30,
        (s0, "y1"): (m10 + m30) * k + m10 * m30,
        (s1, "y1"): k * k + m32 * k + m32 * m30,
        (s2, "y1"): (m32 + m12) * k + m32 * m12,
        (s3, "y1"): k * k + m10 * k + m10 * m12,
    }


def build_orbit_varying_gadget(mu: DirectedMetric, escalate_N: bool = True,
                               budget=None) -> Gadget:
    G = build_underlying_graph(mu)
    cyc, k = normalized_cycle(mu, G)
    s0, s1, s2, s3 = cyc
    base = ["x0", "x1", "y0", "y1", "z0", "z1", "w0", "w1"]
    names = dict(zip(base, _fresh(base, mu.points)))
    n = names.__getitem__
    c4, c3, c2, c1, c0 = {}, {}, {}, {}, {}
    for i in "01":
        for sj in (s2, s3):
            _both(c4, sj, n("x" + i), 1)
        for sj in (s0, s1):
            _both(c4, sj, n("z" + i), 1)
        for sj in cyc:
            _both(c4, sj, n("y" + i), 1)
    for sj in (s1, s2):
        _both(c4, sj, n("w0"), 1)
    for sj in (s0, s3):
        _both(c4, sj, n("w1"), 1)
    for (u, v), w in orbit_varying_c3(mu, cyc, k).items():
        _add(c3, names.get(u, u), names.get(v, v), w)
    for i in "01":
        _both(c2, n("x" + i), n("z" + i), 1)
        _both(c1, n("x" + i), n("y" + i), 1)
        _both(c1, n("z" + i), n("y" + i), 1)
        for j in "01":
            _both(c0, n("y" + i), n("w" + j), 1)
    layers = [("c0", (), c0), ("c1", ("N1",), c1), ("c2", ("N2",), c2),
              ("c3", ("N3",), c3), ("c4", ("N4",), c4)]
    m10, m12, m30, m32 = mu(s1, s0), mu(s1, s2), mu(s3, s0), mu(s3, s2)
    hi = 2 * (m32 + m10 + m12 + m30 + 2 * k)
    lo = 2 * (m32 + m10 + k)
    V = mu.points + tuple(names[b] for b in base)
    g = PairGadget("pair", "orbitvarying", mu, V, layers, layered_bounds(mu, layers),
               {"s": s2, "t": s3, "x": n("x0"), "y": n("x1")},
               expected_delta=hi - lo,
               meta={"cycle": cyc, "k": k, "sigma_levels": (lo, hi),
                     "mu10": m10, "mu12": m12, "mu30": m30, "mu32": m32})
    if escalate_N:
        g = escalate(g, budget)
    return g


def projectivity_path(G, start):
    """Shortest chain of oriented edges e_0 = start, ..., e_k = reversed
    start, consecutive edges opposite in a 4-cycle."""
    nbr = {}
    for p, q, q2, p2 in four_cycles(G):
        nbr.setdefault((p, q), []).append((p2, q2))
    target = (start[1], start[0])
    prev = {start: None}
    dq = deque([start])
    while dq:
        e = dq.popleft()
        if e == target:
            path = []
            while e is not None:
                path.append(e)
                e = prev[e]
            return path[::-1]
        for f in nbr.get(e, ()):
            if f not in prev:
                prev[f] = e
                dq.append(f)
    return None


def build_nonorientable_gadget(mu: DirectedMetric, escalate_N: bool = True,
                               budget=None) -> Gadget:
    G = build_underlying_graph(mu)
    ok, e = is_orientable(G)
    if ok:
        raise GraphOrientable("underlying graph is orientable")
    path = projectivity_path(G, e)
    if path is None:
        raise NoWitnessSequence(f"no projectivity chain from {e!r} to its reversal")
    k = len(path) - 1
    S = [p for p, _ in path[:k]] + [q for _, q in path[:k]]
    z = tuple(_fresh([f"z{i}" for i in range(2 * k)], mu.points))
    c, cp = {}, {}
    for i in range(2 * k):
        _both(c, z[i], S[i], 1)
        _both(c, z[i], S[(i + k) % (2 * k)], 1)
        _both(cp, z[i], z[(i + 1) % (2 * k)], 1)
    layers = [("c'", (), cp), ("c", ("N",), c)]
    h = mu(S[0], S[k])
    g = PairGadget("pair", "nonorientable", mu, mu.points + z, layers,
               layered_bounds(mu, layers),
               {"s": S[0], "t": S[k], "x": z[0], "y": z[k]},
               expected_delta=4 * h, meta={"path": path, "k": k, "h": h, "S": S})
    if escalate_N:
        g = escalate(g, budget)
    return g


def build_biased_triple_gadget(mu: DirectedMetric, triple=None, escalate_N: bool = True,
                               budget=None) -> Gadget:
    if triple is None:
        hit = find_biased_non_collinear_triple(mu)
        if hit is None:
            raise NoBiasedTriple("no biased non-collinear triple")
        triple = hit[0]
    s = tuple(triple)
    z = tuple(_fresh([f"z{j}" for j in range(6)], mu.points))
    c, cp = {}, {}
    directions = []
    for i in range(6):
        lo, hi = s[(i - 1) % 3], s[(i + 1) % 3]
        _both(c, lo, z[i], 1)
        _both(c, hi, z[i], 1)
        ok, w = is_biased_pair(mu, lo, hi)
        if not ok:
            raise AmbiguousDirection(f"pair ({lo!r}, {hi!r}) is not biased")
        directions.append(w.direction)
        if w.direction == ">":
            _add(cp, lo, z[i], mu(hi, lo))
            _add(cp, hi, z[i], mu(lo, hi))
        else:
            _add(cp, z[i], lo, mu(lo, hi))
            _add(cp, z[i], hi, mu(hi, lo))
    layers = [("c'", (), cp), ("c", ("N",), c)]
    sigma = [mu(s[(i - 1) % 3], s[(i + 1) % 3]) * mu(s[(i + 1) % 3], s[(i - 1) % 3])
             for i in range(6)]
    g = SextupleGadget("sextuple", "biased", mu, mu.points + z, layers,
               layered_bounds(mu, layers), {"triple": s, "z": z},
               meta={"directions": directions, "sigma": sigma})
    if escalate_N:
        g = escalate(g, budget)
    return g


def build_for_case(mu: DirectedMetric, case: str = "auto", budget=None) -> list:
    """Gadgets certifying the requested hardness case; the last entry is a
    pair gadget usable by reduce_maxcut."""
    if case == "auto":
        from .classifier import classify
        v = classify(mu, build_certificate=False)
        if v.outcome != "NPHard":
            raise GadgetError(f"metric is not certified NP-hard ({v.summary()})")
        case = {"NotModular": "nonmodular", "NotOrbitInvariant": "orbitvarying",
                "NotOrientable": "nonorientable",
                "BiasedNonCollinearTriple": "biased"}[v.condition]
    if case == "nonmodular":
        sx = build_nonmodular_gadget(mu, budget=budget)
        return [sx, compose_hexagon(sx, budget=budget)]
    if case == "biased":
        sx = build_biased_triple_gadget(mu, budget=budget)
        return [sx, compose_hexagon(sx, budget=budget)]
    if case == "orbitvarying":
        return [build_orbit_varying_gadget(mu, budget=budget)]
    if case == "nonorientable":
        return [build_nonorientable_gadget(mu, budget=budget)]
    raise GadgetError(f"unknown gadget case {case!r}")


# MAX CUT ---------------------------------------------------------------------

@dataclass
class MaxCutInstance:
    vertices: tuple
    edges: tuple
    k: Optional[int] = None

    def __post_init__(self):
        self.vertices = tuple(self.vertices)
        es = []
        for u, v in self.edges:
            if u == v:
                raise GadgetError(f"self-loop at {u!r}")
            if u not in self.vertices or v not in self.vertices:
                raise GadgetError(f"edge ({u!r}, {v!r}) uses an unknown vertex")
            es.append((u, v))
        if len({frozenset(e) for e in es}) != len(es):
            raise GadgetError("parallel edges")
        self.edges = tuple(es)
        if self.k is not None and not 1 <= self.k <= max(len(es), 1):
            raise GadgetError(f"threshold k={self.k} outside 1..|E|")


def max_cut(vertices, edges) -> int:
    vs = list(vertices)
    best = 0
    for bits in product((0, 1), repeat=max(len(vs) - 1, 0)):
        side = dict(zip(vs, (0,) + bits))
        best = max(best, sum(side[u] != side[v] for u, v in edges))
    return best


def cut_threshold(g: Gadget, n_edges: int, k: int) -> Fraction:
    return n_edges * g.tau_star + (n_edges - k) * g.delta


def vertex_names(mc: MaxCutInstance, g: Gadget) -> dict:
    return dict(zip(mc.vertices, _fresh([f"v{u}" for u in mc.vertices], g.metric.points)))


def reduce_maxcut(mc: MaxCutInstance, g: Gadget, k: Optional[int] = None):
    """One gadget copy per edge with x, y identified with the edge's
    endpoints and the terminals shared. Returns (instance, threshold);
    the threshold is None when no k is given."""
    rep = g.report
    if g.kind != "pair" or rep is None or not rep.ok:
        raise GadgetNotVerified("reduce_maxcut needs a verified pair gadget")
    k = mc.k if k is None else k
    T = g.metric.points
    x, y = g.roles["x"], g.roles["y"]
    vname = vertex_names(mc, g)
    aux = [v for v in g.aux if v not in (x, y)]
    variables = list(T) + [vname[u] for u in mc.vertices]
    cost = {}
    gc = g.cost()
    for idx, (u, v) in enumerate(mc.edges):
        ren = {x: vname[u], y: vname[v]}
        for a in aux:
            ren[a] = f"{a}@e{idx}"
        variables += [ren[a] for a in aux]
        for (p, q), w in gc.items():
            key = (ren.get(p, p), ren.get(q, q))
            cost[key] = cost.get(key, Fraction(0)) + w
    threshold = None if k is None else cut_threshold(g, len(mc.edges), k)
    return ZeroExtInstance(g.metric, variables, cost), threshold
