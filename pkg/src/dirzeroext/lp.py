"""Exact linear programming in standard equality form.

    minimize c.x  subject to  A x = b,  x >= 0

`solve` asks HiGHS (floating point) for a vertex and its duals, rounds
both to rationals and accepts them only if primal feasibility, dual
feasibility and equal objective values hold exactly. Otherwise it falls
back to the exact simplex below, so every returned value is an exact
optimum."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from gmpy2 import mpq

DEGENERATE_SWITCH = 50  # consecutive degenerate pivots before Bland's rule
ROUND_DENOM = 10 ** 6

STATS = {"certified": 0, "fallback": 0, "exact": 0}


@dataclass
class LPResult:
    value: Fraction
    x: list  # Fractions, one per column
    method: str
    pivots: int = 0


class LPError(Exception):
    pass


def _to_frac(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def exact_simplex(c, rows, n: int) -> LPResult:
    """Two-phase tableau simplex over gmpy2 rationals.

    rows: list of (dict col -> coefficient, rhs)."""
    m = len(rows)
    T = []
    rhs = []
    for coefs, r in rows:
        row = {j: mpq(v) for j, v in coefs.items() if v != 0}
        r = mpq(r)
        if r < 0:
            row = {j: -v for j, v in row.items()}
            r = -r
        T.append(row)
        rhs.append(r)
    # artificials occupy columns n .. n+m-1
    basis = []
    for i in range(m):
        T[i][n + i] = mpq(1)
        basis.append(n + i)
    obj = {}
    val = mpq(0)
    for i in range(m):
        for j, v in T[i].items():
            if j < n:
                obj[j] = obj.get(j, mpq(0)) - v
        val += rhs[i]
    obj = {j: v for j, v in obj.items() if v != 0}
    state = {"pivots": 0, "degen": 0, "bland": False}

    def pivot(r, e):
        prow = T[r]
        pv = prow[e]
        if pv != 1:
            inv = 1 / pv
            for j in prow:
                prow[j] *= inv
            rhs[r] *= inv
        for i in range(len(T)):
            if i == r:
                continue
            f = T[i].get(e)
            if f is None:
                continue
            row = T[i]
            for j, v in prow.items():
                nv = row.get(j, 0) - f * v
                if nv == 0:
                    row.pop(j, None)
                else:
                    row[j] = nv
            rhs[i] -= f * rhs[r]
        f = obj.get(e)
        dval = None
        if f is not None:
            for j, v in prow.items():
                nv = obj.get(j, 0) - f * v
                if nv == 0:
                    obj.pop(j, None)
                else:
                    obj[j] = nv
            dval = f * rhs[r]
        basis[r] = e
        state["pivots"] += 1
        return dval

    def run(allowed):
        nonlocal val
        while True:
            cands = [(v, j) for j, v in obj.items() if v < 0 and allowed(j)]
            if not cands:
                return
            if state["bland"]:
                e = min(j for _, j in cands)
            else:
                e = min(cands)[1]
            best, r = None, None
            for i in range(len(T)):
                a = T[i].get(e)
                if a is not None and a > 0:
                    q = rhs[i] / a
                    if best is None or q < best or (q == best and basis[i] < basis[r]):
                        best, r = q, i
            if r is None:
                raise LPError("unbounded")
            if best == 0:
                state["degen"] += 1
                if state["degen"] >= DEGENERATE_SWITCH:
                    state["bland"] = True
            else:
                state["degen"] = 0
            dv = pivot(r, e)
            if dv is not None:
                val += dv

    run(lambda j: j < n)
    if val > 0:
        raise LPError("infeasible")
    # drive artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= n:
            e = next((j for j in sorted(T[i]) if j < n), None)
            if e is None:
                del T[i], rhs[i], basis[i]
                continue
            pivot(i, e)
        i += 1
    for row in T:
        for j in [j for j in row if j >= n]:
            del row[j]
    # phase 2
    obj.clear()
    val = mpq(0)
    for j, v in enumerate(c):
        if v != 0:
            obj[j] = mpq(v)
    for i, bj in enumerate(basis):
        cb = obj.get(bj)
        if cb is None:
            continue
        for j, v in T[i].items():
            nv = obj.get(j, 0) - cb * v
            if nv == 0:
                obj.pop(j, None)
            else:
                obj[j] = nv
        val += cb * rhs[i]
    state["degen"] = 0
    run(lambda j: j < n)
    x = [Fraction(0)] * n
    for i, bj in enumerate(basis):
        x[bj] = _to_frac(rhs[i])
    STATS["exact"] += 1
    return LPResult(_to_frac(val), x, "exact-simplex", state["pivots"])


def _certify(c, rows, n, xf, yf) -> Optional[LPResult]:
    x = [Fraction(v).limit_denominator(ROUND_DENOM) if abs(v) > 1e-9 else Fraction(0)
         for v in xf]
    if any(v < 0 for v in x):
        return None
    for coefs, r in rows:
        if sum((Fraction(a) * x[j] for j, a in coefs.items()), Fraction(0)) != r:
            return None
    y = [Fraction(v).limit_denominator(ROUND_DENOM) for v in yf]
    red = [Fraction(cj) for cj in c]
    for i, (coefs, _) in enumerate(rows):
        if y[i]:
            for j, a in coefs.items():
                red[j] -= a * y[i]
    if any(v < 0 for v in red):
        return None
    primal = sum((Fraction(cj) * xj for cj, xj in zip(c, x) if xj), Fraction(0))
    dual = sum((Fraction(r) * y[i] for i, (_, r) in enumerate(rows)), Fraction(0))
    if primal != dual:
        return None
    return LPResult(primal, x, "highs-certified")


def solve(c, rows, n: int, method: str = "auto") -> LPResult:
    """method: 'auto' (HiGHS proposal, exact certificate, exact fallback)
    or 'exact' (exact simplex only)."""
    if method == "exact" or not rows:
        if not rows:
            # no constraints: optimum at x = 0 since costs are nonnegative here
            if any(v < 0 for v in c):
                raise LPError("unbounded")
            return LPResult(Fraction(0), [Fraction(0)] * n, "trivial")
        return exact_simplex(c, rows, n)
    import numpy as np
    from scipy.optimize import linprog
    from scipy.sparse import coo_matrix
    ri, ci, vals = [], [], []
    for i, (coefs, _) in enumerate(rows):
        for j, a in coefs.items():
            ri.append(i)
            ci.append(j)
            vals.append(float(a))
    A = coo_matrix((vals, (ri, ci)), shape=(len(rows), n)).tocsr()
    b = np.array([float(r) for _, r in rows])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = linprog(np.array([float(v) for v in c]), A_eq=A, b_eq=b,
                      bounds=(0, None), method="highs-ds")
    if res.status == 0:
        cert = _certify(c, rows, n, res.x, res.eqlin.marginals)
        if cert is not None:
            STATS["certified"] += 1
            return cert
    STATS["fallback"] += 1
    return exact_simplex(c, rows, n)
