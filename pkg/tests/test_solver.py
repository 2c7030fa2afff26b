import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dirzeroext import errors
from dirzeroext.classifier import classify
from dirzeroext.fixtures import FIXTURES, get
from dirzeroext.solver import (ZeroExtInstance, blp_relax, brute_force, objective,
                               solve_tractable, tau)
from strategies import instances

TRACTABLE = [n for n in sorted(FIXTURES) if classify(get(n)).tractable]
HARD = [n for n in sorted(FIXTURES) if not classify(get(n)).tractable]


def cut_example():
    mu = get("M_CUT")
    return ZeroExtInstance(mu, ["s", "t", "x"], {("s", "x"): 1, ("x", "t"): 2})


def exhaustive(inst, fixings=None):
    mu = inst.metric
    fixings = fixings or {}
    free = [v for v in inst.free if v not in fixings]
    best = None
    for labels in itertools.product(mu.points, repeat=len(free)):
        g = dict(fixings)
        g.update(zip(free, labels))
        val = objective(inst, g)
        best = val if best is None else min(best, val)
    return best


def test_cut_example():
    inst = cut_example()
    val, g = brute_force(inst)
    assert val == 1 and g["x"] == "t"
    assert blp_relax(inst).objective == 1
    v, g2 = solve_tractable(inst, classify(inst.metric))
    assert v == 1 and objective(inst, g2) == 1


def test_invalid_inputs():
    inst = cut_example()
    with pytest.raises(errors.InvalidAssignment):
        objective(inst, {"s": "t", "x": "s"})
    with pytest.raises(errors.InvalidAssignment):
        objective(inst, {"x": "q"})
    with pytest.raises(errors.InvalidAssignment):
        objective(inst, {})
    with pytest.raises(errors.InvalidFixing):
        brute_force(inst, {"s": "t"})
    with pytest.raises(errors.InvalidFixing):
        brute_force(inst, {"x": "q"})
    with pytest.raises(errors.InvalidFixing):
        brute_force(inst, {"y": "s"})
    with pytest.raises(errors.UnknownPoint):
        ZeroExtInstance(inst.metric, ["s", "t"], {("s", "y"): 1})
    with pytest.raises(errors.DirZeroExtError):
        ZeroExtInstance(inst.metric, ["s", "t", "x"], {("s", "x"): -1})
    with pytest.raises(errors.DirZeroExtError):
        ZeroExtInstance(inst.metric, ["s", "x"], {})


def test_budget():
    mu = get("M_K3")
    V = list(mu.points) + [f"v{i}" for i in range(12)]
    cost = {(V[i], V[i + 1]): 1 for i in range(len(V) - 1)}
    cost[(V[-1], V[3])] = 1
    inst = ZeroExtInstance(mu, V, cost)
    with pytest.raises(errors.BudgetExceeded):
        brute_force(inst, budget=1000)
    # 3^12 assignments fit in the default budget
    assert brute_force(inst)[0] == tau(inst)


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("DIRZEROEXT_BUDGET", "2")
    mu = get("M_K3")
    inst = ZeroExtInstance(mu, list(mu.points) + ["a"], {("a", "s0"): 1})
    with pytest.raises(errors.BudgetExceeded):
        brute_force(inst)


def test_tractability_required():
    mu = get("M_K3")
    inst = ZeroExtInstance(mu, mu.points, {})
    with pytest.raises(errors.NotCertifiedTractable):
        solve_tractable(inst, classify(mu))
    with pytest.raises(errors.NotCertifiedTractable):
        solve_tractable(inst, None)


def test_costs_are_merged():
    mu = get("M_CUT")
    inst = ZeroExtInstance(mu, ["s", "t", "x"], {("s", "x"): 1, ("x", "x"): 5})
    assert inst.cost == {("s", "x"): 1}


def test_independent_blocks():
    mu = get("M_C5")
    V = list(mu.points) + [f"a{i}" for i in range(10)]
    cost = {(f"a{i}", mu.points[i % 5]): i + 1 for i in range(10)}
    inst = ZeroExtInstance(mu, V, cost)
    # the free variables are isolated: each goes to its own terminal
    val, g = brute_force(inst, budget=100)
    assert val == 0 and all(g[f"a{i}"] == mu.points[i % 5] for i in range(10))


@pytest.mark.parametrize("name", sorted(FIXTURES))
@settings(max_examples=25)
@given(data=st.data())
def test_brute_force_matches_enumeration(name, data):
    mu = get(name)
    inst = data.draw(instances(mu, max_free=3))
    val, g = brute_force(inst)
    assert val == exhaustive(inst) == objective(inst, g)


@pytest.mark.parametrize("name", HARD)
@settings(max_examples=15)
@given(data=st.data())
def test_lp_is_a_lower_bound(name, data):
    mu = get(name)
    inst = data.draw(instances(mu, max_free=3))
    assert blp_relax(inst).objective <= tau(inst)


@pytest.mark.parametrize("name", ["M_K3", "M_C5"])
@settings(max_examples=15)
@given(data=st.data())
def test_fixing_never_lowers_the_optimum(name, data):
    mu = get(name)
    inst = data.draw(instances(mu, max_free=3))
    if not inst.free:
        return
    x = inst.free[0]
    a = data.draw(st.sampled_from(mu.points))
    assert tau(inst, {x: a}) >= tau(inst)
    assert tau(inst, {x: a}) == exhaustive(inst, {x: a})
    assert min(tau(inst, {x: b}) for b in mu.points) == tau(inst)


@pytest.mark.parametrize("name", TRACTABLE)
@settings(max_examples=15)
@given(data=st.data())
def test_blp_is_exact_on_tractable(name, data):
    mu = get(name)
    inst = data.draw(instances(mu, max_free=3))
    v = classify(mu)
    opt = tau(inst)
    assert blp_relax(inst).objective == opt
    val, g = solve_tractable(inst, v)
    assert val == opt and objective(inst, g) == opt


def test_fractional_terminal_costs():
    mu = get("M_CUT")
    inst = ZeroExtInstance(mu, ["s", "t", "x"], {("s", "x"): Fraction(1, 3), ("x", "t"): "1/2"})
    assert brute_force(inst)[0] == exhaustive(inst)
    assert blp_relax(inst, method="exact").objective == exhaustive(inst)
