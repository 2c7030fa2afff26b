from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dirzeroext import lp


def test_small_exact_lp():
    # min x0 + 2 x1  s.t.  x0 + x1 = 1, x0 - x2 = 1/3
    rows = [({0: 1, 1: 1}, Fraction(1)), ({0: 1, 2: -1}, Fraction(1, 3))]
    for method in ("auto", "exact"):
        res = lp.solve([1, 2, 0], rows, 3, method=method)
        assert res.value == 1
        assert res.x[0] + res.x[1] == 1 and res.x[0] >= Fraction(1, 3)


def test_infeasible_and_unbounded():
    with pytest.raises(lp.LPError):
        lp.exact_simplex([1, 1], [({0: 1, 1: 1}, Fraction(-1))], 2)
    with pytest.raises(lp.LPError):
        lp.exact_simplex([-1, 0], [({0: 1, 1: -1}, Fraction(0))], 2)


def test_no_rows():
    res = lp.solve([1, 0], [], 2)
    assert res.value == 0 and res.method == "trivial"


def test_degenerate_problem_terminates():
    # many redundant constraints through the same vertex
    rows = [({0: 1, 1: 1, 2 + i: 1}, Fraction(1)) for i in range(8)]
    rows.append(({0: 1, 1: 1, 10: -1}, Fraction(1)))
    res = lp.exact_simplex([1, 1] + [0] * 9, rows, 11)
    assert res.value == 1


@st.composite
def feasible_lps(draw):
    n = draw(st.integers(2, 6))
    m = draw(st.integers(1, 4))
    x0 = [draw(st.fractions(0, 3, max_denominator=3)) for _ in range(n)]
    rows = []
    for _ in range(m):
        coefs = {j: draw(st.integers(-3, 3)) for j in range(n)}
        rhs = sum((a * x0[j] for j, a in coefs.items()), Fraction(0))
        rows.append((coefs, rhs))
    c = [draw(st.integers(0, 5)) for _ in range(n)]
    return c, rows, n


@settings(max_examples=100)
@given(feasible_lps())
def test_highs_and_exact_agree(prob):
    c, rows, n = prob
    a = lp.solve(c, rows, n, method="auto")
    b = lp.solve(c, rows, n, method="exact")
    assert a.value == b.value
    for res in (a, b):
        assert all(v >= 0 for v in res.x)
        for coefs, r in rows:
            assert sum((q * res.x[j] for j, q in coefs.items()), Fraction(0)) == r
