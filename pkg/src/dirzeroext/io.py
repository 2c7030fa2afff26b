"""JSON file formats: metrics, instances and schema-versioned reports.

Rationals are always written as strings ("3", "5/2") so nothing passes
through a float."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import jsonschema

from .errors import DirZeroExtError, FormatError
from .metric import INF, DirectedMetric, to_fraction, validate_metric
from .solver import ZeroExtInstance

SCHEMA_VERSION = 1

_RAT = {"type": "string", "pattern": r"^-?\d+(/\d+)?$|^inf$"}

METRIC_SCHEMA = {
    "type": "object",
    "required": ["points", "dist"],
    "properties": {
        "points": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "dist": {"type": "array", "items": {"type": "array"}},
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "kind"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "kind": {"enum": ["classify", "solve", "gadget", "reduce", "polymorphism", "error"]},
    },
    "allOf": [
        {"if": {"properties": {"kind": {"const": "classify"}}},
         "then": {"required": ["outcome", "trace"],
                  "properties": {"outcome": {"enum": ["Tractable", "NPHard", "Unknown"]},
                                 "trace": {"type": "array"}}}},
        {"if": {"properties": {"kind": {"const": "solve"}}},
         "then": {"required": ["value", "assignment", "method"],
                  "properties": {"value": _RAT, "assignment": {"type": "object"}}}},
        {"if": {"properties": {"kind": {"const": "gadget"}}},
         "then": {"required": ["gadgets"],
                  "properties": {"gadgets": {"type": "array", "items": {
                      "type": "object",
                      "required": ["kind", "case", "ok", "tau_star", "N"],
                      "properties": {"tau_star": _RAT, "ok": {"type": "boolean"}}}}}}},
        {"if": {"properties": {"kind": {"const": "reduce"}}},
         "then": {"required": ["threshold", "edges", "tau_star", "delta"],
                  "properties": {"threshold": _RAT}}},
        {"if": {"properties": {"kind": {"const": "polymorphism"}}},
         "then": {"required": ["ok", "operations"],
                  "properties": {"operations": {"type": "array", "items": {
                      "type": "object", "required": ["name", "weight", "table"]}}}}},
    ],
}


def rat(v) -> str:
    if v is INF:
        return "inf"
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def unrat(s) -> Fraction:
    return to_fraction(s)


def jsonable(obj):
    """Best-effort conversion of witnesses and payload pieces."""
    if obj is None or isinstance(obj, (bool, str, int)):
        return obj
    if isinstance(obj, Fraction) or obj is INF:
        return rat(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted((jsonable(x) for x in obj), key=repr)
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, "__dataclass_fields__"):
        return {k: jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__
                if not k.startswith("_")}
    return repr(obj)


def _load_json(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


# metrics ---------------------------------------------------------------------

def metric_to_json(mu: DirectedMetric) -> dict:
    return {"points": [str(p) for p in mu.points],
            "dist": [[rat(mu(x, y)) for y in mu.points] for x in mu.points]}


def metric_from_json(doc, where: str = "metric") -> DirectedMetric:
    try:
        jsonschema.validate(doc, METRIC_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "".join(f"[{p!r}]" for p in exc.absolute_path)
        raise FormatError(f"{where}{path}: {exc.message}") from None
    pts = doc["points"]
    rows = doc["dist"]
    if len(set(pts)) != len(pts):
        raise FormatError(f"{where}.points: duplicate names")
    if len(rows) != len(pts):
        raise FormatError(f"{where}.dist: {len(rows)} rows for {len(pts)} points")
    table = []
    for i, row in enumerate(rows):
        if len(row) != len(pts):
            raise FormatError(f"{where}.dist[{i}]: {len(row)} entries for {len(pts)} points")
        cells = []
        for j, v in enumerate(row):
            if isinstance(v, float):
                raise FormatError(f"{where}.dist[{i}][{j}]: floats not allowed, use \"p/q\"")
            try:
                cells.append(to_fraction(v))
            except DirZeroExtError as exc:
                raise FormatError(f"{where}.dist[{i}][{j}]: {exc}") from None
        table.append(cells)
    return validate_metric(table, pts)


def load_metric(path) -> DirectedMetric:
    return metric_from_json(_load_json(path), where=str(path))


def dump_metric(mu: DirectedMetric, path):
    Path(path).write_text(json.dumps(metric_to_json(mu), indent=1) + "\n")


# instances -------------------------------------------------------------------

def instance_to_json(inst: ZeroExtInstance) -> dict:
    return {"metric": metric_to_json(inst.metric),
            "variables": [str(v) for v in inst.variables],
            "costs": [{"from": u, "to": v, "c": rat(c)} for (u, v), c in inst.cost.items()]}


def instance_from_json(doc, base_dir=None, where="instance") -> ZeroExtInstance:
    if not isinstance(doc, dict):
        raise FormatError(f"{where}: expected an object")
    for key in ("metric", "variables", "costs"):
        if key not in doc:
            raise FormatError(f"{where}: missing field {key!r}")
    m = doc["metric"]
    if isinstance(m, str):
        p = Path(m) if base_dir is None else Path(base_dir) / m
        mu = load_metric(p)
    else:
        mu = metric_from_json(m, where=f"{where}.metric")
    variables = doc["variables"]
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise FormatError(f"{where}.variables: expected a list of names")
    cost = {}
    for i, e in enumerate(doc["costs"]):
        try:
            u, v, c = e["from"], e["to"], e["c"]
        except (KeyError, TypeError):
            raise FormatError(f"{where}.costs[{i}]: needs 'from', 'to', 'c'") from None
        if isinstance(c, float):
            raise FormatError(f"{where}.costs[{i}].c: floats not allowed")
        try:
            c = to_fraction(c)
        except DirZeroExtError as exc:
            raise FormatError(f"{where}.costs[{i}].c: {exc}") from None
        if c < 0:
            raise FormatError(f"{where}.costs[{i}].c: negative cost")
        cost[(u, v)] = cost.get((u, v), Fraction(0)) + c
    try:
        return ZeroExtInstance(mu, variables, cost)
    except DirZeroExtError as exc:
        raise FormatError(f"{where}: {exc}") from None


def load_instance(path) -> ZeroExtInstance:
    return instance_from_json(_load_json(path), base_dir=Path(path).parent, where=str(path))


def dump_instance(inst: ZeroExtInstance, path):
    Path(path).write_text(json.dumps(instance_to_json(inst), indent=1) + "\n")


def load_graph(path):
    """MAX CUT graph file: {"vertices": [...], "edges": [[u, v], ...]}."""
    doc = _load_json(path)
    try:
        vs = [str(v) for v in doc["vertices"]]
        es = [(str(u), str(v)) for u, v in doc["edges"]]
    except (KeyError, TypeError, ValueError):
        raise FormatError(f"{path}: expected vertices and edges lists") from None
    return vs, es


# reports ---------------------------------------------------------------------

def report(kind: str, **fields) -> dict:
    doc = {"schema": SCHEMA_VERSION, "kind": kind}
    doc.update({k: jsonable(v) for k, v in fields.items()})
    return doc


def validate_report(doc):
    try:
        jsonschema.validate(doc, REPORT_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "report" + "".join(f"[{p!r}]" for p in exc.absolute_path)
        raise FormatError(f"{where}: {exc.message}") from None
    return doc


def dumps_report(doc, pretty: bool = False) -> str:
    validate_report(doc)
    return json.dumps(doc, indent=2 if pretty else None, sort_keys=pretty)


def loads_report(text: str) -> dict:
    return validate_report(json.loads(text))


def verdict_report(verdict) -> dict:
    p = verdict.payload
    extra = {}
    if "lattice" in p:
        L = p["lattice"]
        extra["lattice"] = {"bottom": L.bottom, "top": L.top,
                            "rank": {str(k): v for k, v in L.rank.items()}}
    if "center" in p:
        extra["center"] = p["center"]
        extra["partition"] = p["F"]
    if "orbit" in p:
        extra["orbit"] = p["orbit"]
    if "polymorphism" in p:
        extra["support_size"] = len(p["polymorphism"].entries)
    return report("classify", outcome=verdict.outcome, condition=verdict.condition,
                  witness=verdict.witness, certificate=verdict.certificate,
                  trace=verdict.trace, **extra)


def polymorphism_report(omega, ok: bool, witness=None, semilattice=()) -> dict:
    ops = []
    names = {op.name for op in semilattice}
    for op, w in omega.entries:
        ops.append({"name": op.name, "weight": rat(w), "semilattice": op.name in names,
                    "table": [[op.points[j] for j in row] for row in op.table]})
    return report("polymorphism", ok=ok, witness=witness, points=list(omega.entries[0][0].points),
                  total_weight=omega.total_weight, operations=ops)


def gadget_summary(g) -> dict:
    rep = g.report
    out = {"kind": g.kind, "case": g.case, "ok": bool(rep and rep.ok),
           "roles": g.roles, "N": {k: rat(v) for k, v in g.N.items()},
           "tau_star": rat(rep.tau_star), "delta": None if rep.delta is None else rat(rep.delta),
           "expected_delta": None if g.expected_delta is None else rat(g.expected_delta),
           "optimal_fixings": sorted([list(k) for k in rep.optimal]),
           "N_history": [{k: rat(v) for k, v in h.items()} for h in g.meta.get("N_history", [])],
           "variables": list(g.variables)}
    if g.kind == "pair":
        out["tau"] = [{"x": a, "y": b, "tau": rat(v)} for (a, b), v in rep.taus.items()]
    return out
