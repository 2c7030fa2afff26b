#!/usr/bin/env python3
"""Write every built-in fixture metric to fixtures/<name>.json, plus a few
small MAX CUT graphs and a demo instance."""
import argparse
import json
from pathlib import Path

from dirzeroext import fixtures, io
from dirzeroext.solver import ZeroExtInstance

GRAPHS = {
    "edge": (["a", "b"], [("a", "b")]),
    "triangle": (["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")]),
    "k4": (["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("a", "d"),
                                  ("b", "c"), ("b", "d"), ("c", "d")]),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "fixtures"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in fixtures.FIXTURES:
        io.dump_metric(fixtures.get(name), out / f"{name}.json")
    for name, (vs, es) in GRAPHS.items():
        (out / f"graph_{name}.json").write_text(
            json.dumps({"vertices": vs, "edges": [list(e) for e in es]}) + "\n")
    mu = fixtures.get("M_CUT")
    inst = ZeroExtInstance(mu, ("s", "t", "u", "v"),
                           {("s", "u"): 3, ("u", "v"): 2, ("v", "t"): 1, ("u", "t"): 1})
    doc = io.instance_to_json(inst)
    doc["metric"] = "M_CUT.json"
    (out / "instance_cut.json").write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {len(fixtures.FIXTURES)} metrics, {len(GRAPHS)} graphs, 1 instance to {out}")


if __name__ == "__main__":
    main()
