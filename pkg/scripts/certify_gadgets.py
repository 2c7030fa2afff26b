#!/usr/bin/env python3
"""Build and certify the hardness gadgets for every NP-hard fixture and
print their separation, optimum and N values."""
import argparse
import time

from dirzeroext.classifier import classify
from dirzeroext.fixtures import FIXTURES, get
from dirzeroext.gadgets import build_for_case, verify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("names", nargs="*", help="fixture names (default: all NP-hard)")
    ap.add_argument("--budget", type=int, default=None)
    args = ap.parse_args()
    names = args.names or [n for n in sorted(FIXTURES) if classify(get(n)).outcome == "NPHard"]
    for n in names:
        t0 = time.perf_counter()
        gs = build_for_case(get(n), budget=args.budget)
        for g in gs:
            again = verify(g.scaled(2), args.budget, raise_on_fail=False)
            stable = again.signature() == g.report.signature()
            Ns = ", ".join(f"{k}={v}" for k, v in g.N.items())
            print(f"{n:<10} {g.case:<22} {g.kind:<9} delta={g.delta!s:<6} "
                  f"tau*={g.tau_star!s:<10} stable={stable} escalations="
                  f"{len(g.meta['N_history']) - 1}  {Ns}")
        print(f"{'':<10} {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
