#!/usr/bin/env python3
"""Classify every metric JSON file under a directory (default: fixtures/)
and print the verdict, condition and witness for each."""
import argparse
import sys
import time
from pathlib import Path

from dirzeroext import io
from dirzeroext.classifier import classify
from dirzeroext.errors import DirZeroExtError


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("root", nargs="?",
                    default=str(Path(__file__).resolve().parent.parent / "fixtures"))
    ap.add_argument("--pattern", default="M_*.json")
    args = ap.parse_args()
    files = sorted(Path(args.root).glob(args.pattern))
    if not files:
        print(f"no files matching {args.pattern} under {args.root}", file=sys.stderr)
        return 1
    counts = {}
    for f in files:
        t0 = time.perf_counter()
        try:
            v = classify(io.load_metric(f))
        except DirZeroExtError as exc:
            print(f"{f.name:<18} error: {exc}")
            counts["error"] = counts.get("error", 0) + 1
            continue
        dt = (time.perf_counter() - t0) * 1000
        label = v.certificate if v.tractable else v.condition
        print(f"{f.name:<18} {v.outcome:<10} {label or '':<26} {dt:7.1f} ms  "
              f"witness={v.witness!r}")
        counts[v.outcome] = counts.get(v.outcome, 0) + 1
    print(" ".join(f"{k}={c}" for k, c in sorted(counts.items())))
    return 0


if __name__ == "__main__":
    sys.exit(main())
