import itertools
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dirzeroext import errors
from dirzeroext.fixtures import get
from dirzeroext.gadgets import (MaxCutInstance, build_biased_triple_gadget, build_for_case,
                                build_nonmodular_gadget, build_nonorientable_gadget,
                                build_orbit_varying_gadget, compose_hexagon,
                                designated_sextuples, layered_bounds, max_cut,
                                projectivity_path, reduce_maxcut, verify, verify_pair_gadget,
                                verify_sextuple_gadget)
from dirzeroext.graph import build_underlying_graph, is_orientable
from dirzeroext.solver import brute_force, objective, tau


@pytest.fixture(scope="module")
def k3():
    sx = build_nonmodular_gadget(get("M_K3"))
    return sx, compose_hexagon(sx)


@pytest.fixture(scope="module")
def ov4():
    return build_orbit_varying_gadget(get("M_OV4"))


def test_designated_sextuples():
    d = designated_sextuples(("a", "b", "c"))
    assert len(d) == 64
    assert ("b", "a", "a", "b", "a", "a") in d
    assert all(t[0] in "bc" and t[1] in "ac" and t[2] in "ab" for t in d)


def test_nonmodular_sextuple(k3):
    sx, _ = k3
    rep = sx.report
    assert rep.ok and rep.delta > 0
    assert rep.optimal == designated_sextuples(sx.roles["triple"])
    assert sx.meta["a"] == [Fraction(1, 2)] * 3


def test_hexagon_on_k3(k3):
    _, hx = k3
    assert hx.report.ok and hx.delta == 2 == hx.expected_delta
    assert hx.meta["h"] == [1, 1, 1]
    s, t = hx.roles["s"], hx.roles["t"]
    T = hx.metric.points
    assert {(s, t), (t, s)} <= hx.report.optimal
    assert all(hx.report.taus[(a, b)] >= hx.tau_star + 2 for a in T for b in T
               if (a, b) not in ((s, t), (t, s)))


def test_orbit_varying(ov4):
    g = ov4
    assert g.report.ok
    assert g.expected_delta == 6 == g.delta
    assert g.meta["k"] == 1


def test_nonorientable():
    mu = get("M_K33")
    G = build_underlying_graph(mu)
    e = is_orientable(G)[1]
    path = projectivity_path(G, e)
    assert path[0] == e and path[-1] == e[::-1]
    g = build_nonorientable_gadget(mu)
    assert g.report.ok and g.delta == g.expected_delta == 4


def test_biased_triple():
    mu = get("M_STAR3B")
    sx = build_biased_triple_gadget(mu)
    assert sx.report.ok and sx.report.delta > 0
    hx = compose_hexagon(sx)
    assert hx.report.ok and hx.delta > 0


def test_c5_chain():
    gs = build_for_case(get("M_C5"))
    assert [g.kind for g in gs] == ["sextuple", "pair"]
    assert gs[-1].delta == 2


def test_negative_controls():
    with pytest.raises(errors.ConditionFailed) as ei:
        build_nonmodular_gadget(get("M_C5"), a_override=[0, 0, 0])
    assert ei.value.clause == "ii"
    sx = build_nonmodular_gadget(get("M_K3"), escalate_N=False)
    hx = compose_hexagon(sx, N=0, escalate_N=False)
    rep = verify_pair_gadget(hx, raise_on_fail=False)
    assert not rep.ok and rep.failed[0] == "i"
    with pytest.raises(errors.ConditionFailed):
        verify(hx)


def test_builders_reject_wrong_cases():
    with pytest.raises(errors.MetricIsModular):
        build_nonmodular_gadget(get("M_CUT"))
    with pytest.raises(errors.NoOrbitVaryingCycle):
        build_orbit_varying_gadget(get("M_C4"))
    with pytest.raises(errors.GraphOrientable):
        build_nonorientable_gadget(get("M_C4"))
    with pytest.raises(errors.NoBiasedTriple):
        build_biased_triple_gadget(get("M_STAR3U"))
    with pytest.raises(errors.GadgetError):
        build_for_case(get("M_CUT"))
    with pytest.raises(errors.GadgetError):
        build_for_case(get("M_K3"), case="bogus")


def test_swapped_roles_still_pass(ov4):
    g = ov4
    r = dict(g.roles)
    r["x"], r["y"] = r["y"], r["x"]
    rep = verify_pair_gadget(replace(g, roles=r))
    assert rep.ok and rep.delta == g.delta


def test_layered_bounds_dominate(ov4):
    g = ov4
    N = layered_bounds(g.metric, g.layers)
    assert all(g.N[f] >= N[f] for f in N)
    assert N["N1"] < N["N2"] < N["N3"] < N["N4"]


@pytest.mark.parametrize("builder", ["k3", "ov4"])
def test_escalation_invariance(builder, request):
    g = request.getfixturevalue(builder)
    if isinstance(g, tuple):
        g = g[1]
    for factor in (2, 4):
        rep = verify(g.scaled(factor))
        assert rep.signature() == g.report.signature()
    assert g.meta["N_history"]


def test_sextuple_fast_path_matches_brute_force(k3):
    sx, _ = k3
    rep = verify_sextuple_gadget(sx)
    inst = sx.instance
    z = sx.roles["z"]
    T = sx.metric.points
    for lab in list(itertools.product(T, repeat=6))[::37]:
        assert rep.taus[lab] == tau(inst, dict(zip(z, lab)))


def test_maxcut_helpers():
    assert max_cut("abc", [("a", "b"), ("b", "c"), ("a", "c")]) == 2
    assert max_cut("a", []) == 0
    with pytest.raises(errors.GadgetError):
        MaxCutInstance("ab", [("a", "a")])
    with pytest.raises(errors.GadgetError):
        MaxCutInstance("ab", [("a", "c")])
    with pytest.raises(errors.GadgetError):
        MaxCutInstance("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(errors.GadgetError):
        MaxCutInstance("ab", [("a", "b")], k=2)


def test_reduce_requires_verified_pair(k3):
    sx, _ = k3
    with pytest.raises(errors.GadgetNotVerified):
        reduce_maxcut(MaxCutInstance("ab", [("a", "b")]), sx)


def test_triangle_reduction(k3):
    _, g = k3
    mc = MaxCutInstance("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    inst, thr2 = reduce_maxcut(mc, g, 2)
    _, thr3 = reduce_maxcut(mc, g, 3)
    opt = tau(inst)
    assert opt == 3 * g.tau_star + g.delta
    assert opt <= thr2 and opt > thr3


def test_single_edge(ov4):
    g = ov4
    inst, thr = reduce_maxcut(MaxCutInstance("ab", [("a", "b")]), g, 1)
    val, asg = brute_force(inst)
    assert val == g.tau_star == thr
    assert objective(inst, asg) == val


@st.composite
def small_graphs(draw):
    n = draw(st.integers(1, 4))
    vs = "abcd"[:n]
    pairs = list(itertools.combinations(vs, 2))
    es = [p for p in pairs if draw(st.booleans())]
    return vs, es


@settings(max_examples=20)
@given(small_graphs())
def test_reduction_formula(k3, G):
    _, g = k3
    vs, es = G
    inst, _ = reduce_maxcut(MaxCutInstance(vs, es), g)
    mc = max_cut(vs, es)
    assert tau(inst) == len(es) * g.tau_star + (len(es) - mc) * g.delta
