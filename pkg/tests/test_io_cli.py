import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given

from dirzeroext import errors, io
from dirzeroext.classifier import classify
from dirzeroext.cli import EXIT_ERROR, EXIT_NPHARD, EXIT_OK, main
from dirzeroext.fixtures import FIXTURES, get
from dirzeroext.solver import ZeroExtInstance
from strategies import graph_metrics

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main(list(map(str, argv)))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_files_match(name):
    assert io.load_metric(FIX / f"{name}.json") == get(name)


@given(graph_metrics())
def test_metric_roundtrip(mu):
    assert io.metric_from_json(json.loads(json.dumps(io.metric_to_json(mu)))) == mu


def test_instance_roundtrip(tmp_path):
    mu = get("M_CUT")
    inst = ZeroExtInstance(mu, ["s", "t", "x"], {("s", "x"): Fraction(1, 3), ("x", "t"): 2})
    p = tmp_path / "i.json"
    io.dump_instance(inst, p)
    back = io.load_instance(p)
    assert back.variables == inst.variables and back.cost == inst.cost
    assert back.metric == mu
    ref = io.load_instance(FIX / "instance_cut.json")
    assert ref.metric == mu


def test_format_errors(tmp_path):
    bad = {"points": ["a", "b"], "dist": [[0, 1], [0.5, 0]]}
    with pytest.raises(errors.FormatError, match=r"dist\[1\]\[0\]"):
        io.metric_from_json(bad)
    p = tmp_path / "x.json"
    p.write_text('{"points": [\n  "a",, ]}')
    with pytest.raises(errors.FormatError, match="line 2"):
        io.load_metric(p)
    with pytest.raises(errors.FormatError):
        io.metric_from_json({"points": ["a"]})
    with pytest.raises(errors.MetricError):
        io.metric_from_json({"points": ["a", "b"], "dist": [[0, 0], [0, 0]]})


def test_rationals():
    assert io.rat(Fraction(3, 4)) == "3/4" and io.unrat("3/4") == Fraction(3, 4)
    assert io.unrat(io.rat(Fraction(5))) == 5


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_verdict_reports_validate(name):
    doc = io.verdict_report(classify(get(name)))
    text = io.dumps_report(doc)
    assert io.loads_report(text) == json.loads(text)


def test_invalid_report_rejected():
    with pytest.raises(errors.FormatError):
        io.validate_report({"schema": 1, "kind": "solve", "value": "1"})
    with pytest.raises(errors.FormatError):
        io.validate_report({"schema": 99, "kind": "error"})


def test_cli_classify(capsys):
    code, out, _ = run(capsys, "classify", FIX / "M_CUT.json")
    assert code == EXIT_OK and json.loads(out)["outcome"] == "Tractable"
    code, out, err = run(capsys, "classify", FIX / "M_K3.json", "--explain", "--pretty")
    assert code == EXIT_NPHARD and "verdict" in err
    assert json.loads(out)["condition"] == "NotModular"
    code, out, _ = run(capsys, "--pretty", "classify", FIX / "M_OV4.json")
    assert code == EXIT_NPHARD and "\n" in out.strip()


def test_cli_errors(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"points": ["a", "b"], "dist": [[0, 1.5], [1, 0]]}))
    code, out, err = run(capsys, "classify", p)
    assert code == EXIT_ERROR and "dist[0][1]" in err
    assert json.loads(out)["kind"] == "error"
    code, out, err = run(capsys, "gadget", FIX / "M_CUT.json")
    assert code == EXIT_ERROR
    code, out, err = run(capsys, "classify", tmp_path / "missing.json")
    assert code == EXIT_ERROR


def test_cli_solve(capsys):
    code, out, _ = run(capsys, "solve", FIX / "instance_cut.json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["method"] == "blp-self-reduction"
    code, out2, _ = run(capsys, "solve", FIX / "instance_cut.json", "--method", "brute")
    assert json.loads(out2)["value"] == doc["value"]
    code, out3, _ = run(capsys, "solve", FIX / "instance_cut.json", "--method", "blp")
    assert json.loads(out3)["lp_value"] == doc["value"]


def test_cli_gadget_and_reduce(capsys, tmp_path):
    emit = tmp_path / "g.json"
    code, out, _ = run(capsys, "gadget", FIX / "M_K3.json", "--emit", emit)
    doc = json.loads(out)
    assert code == EXIT_OK and all(g["ok"] for g in doc["gadgets"])
    assert io.load_instance(emit).metric == get("M_K3")
    for k, ans in ((2, "yes"), (3, "no")):
        code, out, _ = run(capsys, "reduce", FIX / "M_K3.json", FIX / "graph_triangle.json",
                           k, "--check")
        doc = json.loads(out)
        assert doc["decision"] == ans and doc["consistent"]


def test_cli_verify_polymorphism(capsys):
    code, out, _ = run(capsys, "verify-polymorphism", FIX / "M_STAR3U.json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["ok"]
    assert sum(io.unrat(o["weight"]) for o in doc["operations"]) == 1
    code, _, _ = run(capsys, "verify-polymorphism", FIX / "M_K3.json")
    assert code == EXIT_ERROR


def test_cli_more_examples(capsys, tmp_path):
    code, out, _ = run(capsys, "reduce", FIX / "M_OV4.json", FIX / "graph_edge.json", 1,
                       "--check", "--case", "orbitvarying")
    assert code == EXIT_OK and json.loads(out)["decision"] == "yes"
    mu = get("M_K3")
    inst = ZeroExtInstance(mu, list(mu.points) + ["x"], {("x", "s0"): 1, ("s1", "x"): 1})
    p = tmp_path / "k3.json"
    io.dump_instance(inst, p)
    code, out, _ = run(capsys, "solve", p, "--method", "blp")
    doc = json.loads(out)
    assert code == EXIT_OK and "integral" in doc and io.unrat(doc["lp_value"]) <= 1
    code, out, err = run(capsys, "solve", p)
    assert "warning" in err and json.loads(out)["method"] == "brute"
    code, out, _ = run(capsys, "gadget", FIX / "M_OV4.json", "--case", "orbitvarying")
    assert json.loads(out)["gadgets"][0]["case"] == "orbitvarying"
    code, out, err = run(capsys, "solve", FIX / "instance_cut.json", "--method", "brute",
                         "--budget", "0")
    assert code == EXIT_ERROR and "--budget" in err
