#!/usr/bin/env python3
"""Check the MAX CUT reduction on every labelled graph with at most
--max-n vertices: the composed optimum must equal
|E| tau* + (|E| - maxcut) delta, and the threshold decision must be
correct for every k."""
import argparse
import itertools
import sys
import time

from dirzeroext.fixtures import get
from dirzeroext.gadgets import (MaxCutInstance, build_for_case, cut_threshold, max_cut,
                                reduce_maxcut)
from dirzeroext.solver import tau


def graphs(max_n):
    for n in range(1, max_n + 1):
        vs = tuple(range(n))
        pairs = list(itertools.combinations(vs, 2))
        for mask in range(2 ** len(pairs)):
            yield vs, [p for i, p in enumerate(pairs) if mask >> i & 1]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("names", nargs="*", default=["M_K3", "M_STAR3B", "M_K33", "M_OV4"])
    ap.add_argument("--max-n", type=int, default=4)
    args = ap.parse_args()
    failures = 0
    for name in args.names:
        t0 = time.perf_counter()
        g = build_for_case(get(name))[-1]
        n_graphs = bad = 0
        for vs, es in graphs(args.max_n):
            n_graphs += 1
            inst, _ = reduce_maxcut(MaxCutInstance(vs, es), g)
            opt = tau(inst)
            mc = max_cut(vs, es)
            ok = opt == len(es) * g.tau_star + (len(es) - mc) * g.delta
            ok &= all((opt <= cut_threshold(g, len(es), k)) == (mc >= k)
                      for k in range(1, len(es) + 1))
            bad += not ok
        failures += bad
        print(f"{name:<10} {g.case:<22} graphs={n_graphs} failures={bad} "
              f"{time.perf_counter() - t0:.2f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
