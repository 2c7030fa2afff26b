"""Command-line interface.

Exit codes: 0 success (classify: tractable), 2 classify: NP-hard,
3 classify: unknown, 1 input or usage error."""
from __future__ import annotations

import argparse
import sys

from . import io
from .errors import DirZeroExtError, NotCertifiedTractable

EXIT_OK, EXIT_ERROR, EXIT_NPHARD, EXIT_UNKNOWN = 0, 1, 2, 3


def _emit(doc, args):
    print(io.dumps_report(doc, pretty=args.pretty))


def cmd_classify(args) -> int:
    from .classifier import classify
    mu = io.load_metric(args.metric)
    v = classify(mu, build_certificate=not args.no_certificate)
    if args.explain:
        for st in v.trace:
            extra = {k: x for k, x in st.items() if k not in ("step", "test", "result")}
            detail = " ".join(f"{k}={x!r}" for k, x in extra.items() if x is not None)
            print(f"  step {st['step']}: {st['test']:<32} {st['result']!s:<6} {detail}",
                  file=sys.stderr)
        print(f"  verdict: {v.summary()}", file=sys.stderr)
    _emit(io.verdict_report(v), args)
    return {"Tractable": EXIT_OK, "NPHard": EXIT_NPHARD}.get(v.outcome, EXIT_UNKNOWN)


def cmd_solve(args) -> int:
    from .classifier import classify
    from .solver import blp_relax, brute_force, solve_tractable
    inst = io.load_instance(args.instance)
    if args.method == "blp":
        sol = blp_relax(inst)
        asg = sol.rounded() if sol.is_integral() else {}
        _emit(io.report("solve", value=sol.objective, assignment=asg, method="blp",
                        lp_value=sol.objective, integral=sol.is_integral(),
                        lp_method=sol.method), args)
        return EXIT_OK
    if args.method == "auto":
        v = classify(inst.metric)
        if v.tractable:
            val, gamma = solve_tractable(inst, v)
            _emit(io.report("solve", value=val, assignment=gamma, method="blp-self-reduction",
                            certificate=v.certificate), args)
            return EXIT_OK
        print(f"warning: metric is {v.summary()}; falling back to exhaustive search",
              file=sys.stderr)
    val, gamma = brute_force(inst, budget=args.budget)
    _emit(io.report("solve", value=val, assignment=gamma, method="brute"), args)
    return EXIT_OK


def _gadgets(mu, case, budget):
    from .gadgets import build_for_case
    return build_for_case(mu, case, budget=budget)


def cmd_gadget(args) -> int:
    mu = io.load_metric(args.metric)
    gs = _gadgets(mu, args.case, args.budget)
    if args.emit:
        io.dump_instance(gs[-1].instance, args.emit)
    _emit(io.report("gadget", gadgets=[io.gadget_summary(g) for g in gs],
                    emitted=args.emit), args)
    return EXIT_OK


def cmd_reduce(args) -> int:
    from .gadgets import MaxCutInstance, max_cut, reduce_maxcut
    from .solver import brute_force
    mu = io.load_metric(args.metric)
    vs, es = io.load_graph(args.graph)
    mc = MaxCutInstance(vs, es, args.k)
    g = _gadgets(mu, args.case, args.budget)[-1]
    inst, thr = reduce_maxcut(mc, g)
    if args.emit:
        io.dump_instance(inst, args.emit)
    fields = dict(threshold=thr, edges=len(es), k=args.k, tau_star=g.tau_star,
                  delta=g.delta, case=g.case, variables=len(inst.variables))
    if args.check:
        opt = brute_force(inst, budget=args.budget)[0]
        mcut = max_cut(vs, es)
        fields.update(optimum=opt, decision="yes" if opt <= thr else "no", maxcut=mcut,
                      consistent=(opt <= thr) == (mcut >= args.k))
    _emit(io.report("reduce", emitted=args.emit, **fields), args)
    return EXIT_OK


def cmd_verify_polymorphism(args) -> int:
    from .classifier import classify
    from .polymorphism import check_polymorphism, semilattice_ops
    mu = io.load_metric(args.metric)
    v = classify(mu)
    if not v.tractable:
        raise NotCertifiedTractable(f"metric is {v.summary()}")
    om = v.payload["polymorphism"]
    ok, wit = check_polymorphism(om, mu, also_unary=True)
    semi = semilattice_ops(om)
    ok = ok and om.total_weight == 1 and bool(semi)
    _emit(io.polymorphism_report(om, ok, wit, semi), args)
    return EXIT_OK if ok else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dirzeroext",
                                description="Directed minimum 0-extension toolkit")
    p.add_argument("--pretty", action="store_true", help="indented JSON output")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="indented JSON output")
    sub = p.add_subparsers(dest="cmd", required=True)
    budget_kw = dict(type=int, default=None,
                     help="brute-force evaluation budget (default: $DIRZEROEXT_BUDGET or 2e7)")
    cases = ["auto", "nonmodular", "orbitvarying", "nonorientable", "biased"]

    c = sub.add_parser("classify", parents=[common], help="decide tractability of a metric")
    c.add_argument("metric")
    c.add_argument("--explain", action="store_true", help="print decision steps to stderr")
    c.add_argument("--no-certificate", action="store_true")
    c.set_defaults(fn=cmd_classify)

    s = sub.add_parser("solve", parents=[common], help="solve a 0-extension instance")
    s.add_argument("instance")
    s.add_argument("--method", choices=["auto", "brute", "blp"], default="auto")
    s.add_argument("--budget", **budget_kw)
    s.set_defaults(fn=cmd_solve)

    g = sub.add_parser("gadget", parents=[common], help="build and certify a hardness gadget")
    g.add_argument("metric")
    g.add_argument("--case", choices=cases, default="auto")
    g.add_argument("--emit", help="write the pair gadget instance to this path")
    g.add_argument("--budget", **budget_kw)
    g.set_defaults(fn=cmd_gadget)

    r = sub.add_parser("reduce", parents=[common], help="MAX CUT to 0-extension reduction")
    r.add_argument("metric")
    r.add_argument("graph")
    r.add_argument("k", type=int)
    r.add_argument("--case", choices=cases, default="auto")
    r.add_argument("--emit", help="write the composed instance to this path")
    r.add_argument("--check", action="store_true", help="brute-force the composed instance")
    r.add_argument("--budget", **budget_kw)
    r.set_defaults(fn=cmd_reduce)

    v = sub.add_parser("verify-polymorphism", parents=[common],
                       help="build and check the tractability certificate")
    v.add_argument("metric")
    v.set_defaults(fn=cmd_verify_polymorphism)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "pretty"):
        args.pretty = False
    try:
        return args.fn(args)
    except DirZeroExtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(io.dumps_report(io.report("error", error=type(exc).__name__, message=str(exc)),
                              pretty=args.pretty))
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
