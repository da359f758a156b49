"""``gconverge`` command-line front end.

Exit codes: 0 when everything passed, 1 when a suite or scenario failed,
2 on usage errors and violated preconditions.
"""

from __future__ import annotations

import argparse
import sys

from .errors import GuardError, PreconditionError
from .methods import DEFAULT_N_MAX, Product, default_tolerance, parse_method
from .parsing import parse_box, parse_family, parse_point, parse_seq, parse_set
from .rational import parse_rat
from .reports import SCHEMA, dumps
from .suites import DEFAULT_SEED, SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SET_VERBS = {
    "hull": "G-hull of a set",
    "kernel": "G-kernel of a set",
    "closure": "G-closure (hull iterated to a fixed point)",
    "interior": "G-interior (largest G-open subset)",
    "closed": "is the set G-closed?",
    "open": "is the set G-open?",
    "dense": "is the set G-dense?",
    "connected": "G-connectedness, with a separation when there is one",
}


def _method_args(p: argparse.ArgumentParser, default: str = "lim"):
    p.add_argument("--method", default=default,
                   help="lim | cesaro | stat | matrix:<file|cesaro> | prod(<method>)")
    p.add_argument("--tolerance", type=parse_rat, default=None,
                   help="matrix tolerance (default GCONVERGE_TOLERANCE or 1e-9)")
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX, help="matrix truncation")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gconverge", description="Exact G-convergence methods, G-topology operators and property suites.")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    sub = ap.add_subparsers(dest="verb", required=True, metavar="VERB")

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    for name, help_ in SET_VERBS.items():
        p = add(name, help=help_)
        _method_args(p)
        p.add_argument("expr", help='set expression, e.g. "[0,1] u (2,3]"')

    p = add("limit", help="generalized limit of a sequence literal")
    _method_args(p)
    p.add_argument("seq", help='e.g. "per(prefix=[]; cycle=[0,1])"')

    for name in ("box-hull", "box-closed"):
        p = add(name, help=f"{name.replace('-', ' ')} of a finite-depth product")
        _method_args(p, "prod(lim)")
        p.add_argument("box", nargs="?", help='e.g. "box[d=2]{(0,1); [2,3]; tail=R}"')
        p.add_argument("--family", help='factor rule, e.g. "shifted(r=1/4)"')
        p.add_argument("--depth", type=int, default=4)

    p = add("scenario", help="named scenarios: ex33, sigma")
    p.add_argument("name", choices=["ex33", "sigma"])
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--a", default="0", help="sigma base point (number, i, 1/i or [v,...; then rule])")
    p.add_argument("--x", default="i", help="sigma target point")

    p = add("suite", help="seeded property suites: " + ", ".join(SUITES))
    p.add_argument("name", choices=sorted(SUITES))
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--method", default=None)
    p.add_argument("--timing", action="store_true", help="include wall time in JSON output")

    p = add("group-axioms", help="additive group axioms under a method")
    _method_args(p)

    p = add("closure-base", help="G-closure as an intersection of A + U_k")
    _method_args(p)
    p.add_argument("--set", required=True, dest="set_expr")
    p.add_argument("--K", type=int, default=16)
    return ap


def _method(args):
    tol = args.tolerance if getattr(args, "tolerance", None) is not None else default_tolerance()
    return parse_method(args.method, n_max=getattr(args, "n_max", DEFAULT_N_MAX), tol=tol)


def _emit(args, payload: dict, text: str):
    if args.json:
        print(dumps(dict({"schema": SCHEMA}, **payload)))
    else:
        print(text)


def _set_verb(args) -> int:
    from . import topology as t

    m = _method(args)
    a = parse_set(args.expr)
    witnesses = {}
    if args.verb in ("hull", "kernel", "interior"):
        result = {"hull": t.hull, "kernel": t.kernel, "interior": t.g_interior}[args.verb](m, a)
        text = str(result)
        result = str(result)
    elif args.verb == "closure":
        c, iters = t.g_closure_trace(m, a)
        witnesses["iterations"] = iters
        result, text = str(c), str(c)
    elif args.verb in ("closed", "open", "dense"):
        fn = {"closed": t.is_g_closed, "open": t.is_g_open, "dense": t.is_g_dense}[args.verb]
        result = fn(m, a)
        text = "true" if result else "false"
        witnesses["hull"] = str(t.hull(m, a))
        witnesses["kernel"] = str(t.kernel(m, a))
    else:
        rep = t.is_g_connected(m, a)
        result = rep.connected
        witnesses = rep.to_json()
        text = "connected" if rep.connected else f"separated: F={rep.separation[0]}  K={rep.separation[1]}"
    _emit(args, {"input": str(a), "method": m.name, "verb": args.verb, "result": result,
                 "witnesses": witnesses}, text)
    return EXIT_OK


def _limit(args) -> int:
    m = _method(args)
    s = parse_seq(args.seq)
    r = m.limit(s)
    _emit(args, {"input": str(s), "method": m.name, "in_domain": m.in_domain(s), "result": r}, str(r))
    return EXIT_OK


def _box(args) -> int:
    from .products import DepthBox, box_closed, box_hull

    m = _method(args)
    if args.box and args.family:
        raise PreconditionError("give a box literal or --family, not both")
    if args.family:
        b = DepthBox.of_family(parse_family(args.family), args.depth)
    elif args.box:
        b = parse_box(args.box)
    else:
        raise PreconditionError("a box literal or --family is required")
    if args.verb == "box-hull":
        h = box_hull(m, b)
        _emit(args, {"input": str(b), "method": m.name, "result": h}, str(h))
    else:
        c = box_closed(m, b)
        _emit(args, {"input": str(b), "method": m.name, "result": c}, "true" if c else "false")
    return EXIT_OK


def _scenario(args) -> int:
    from .products import example33_scenario, sigma_density_scenario

    if args.name == "ex33":
        rep = example33_scenario(args.depth)
    else:
        rep = sigma_density_scenario(args.depth, parse_point(args.a), parse_point(args.x))
    if args.json:
        print(dumps(rep))
    else:
        print(rep.render())
    return EXIT_OK if rep.passed else EXIT_FAIL


def _suite(args) -> int:
    m = parse_method(args.method) if args.method else None
    if isinstance(m, Product):
        m = m.factor
    res = run_suite(args.name, args.trials, args.seed, m)
    if args.json:
        print(dumps(res.to_json(timing=args.timing)))
    else:
        print(res.render())
    return EXIT_OK if res.passed else EXIT_FAIL


def _group_axioms(args) -> int:
    from .corpus import addable_pairs
    from .groups import check_group_axioms

    rep = check_group_axioms(_method(args), addable_pairs())
    print(dumps(rep) if args.json else rep.render())
    return EXIT_OK if rep.passed else EXIT_FAIL


def _closure_base(args) -> int:
    from .groups import NeighborhoodBase, closure_via_base

    if args.K < 1:
        raise PreconditionError("--K must be positive")
    rep = closure_via_base(_method(args), parse_set(args.set_expr), NeighborhoodBase(args.K))
    if args.json:
        print(dumps(rep))
    else:
        print(rep.render())
        print(f"  I_K = {rep.meta['I_K']}; closure = {rep.meta['closure']}; gap = {rep.meta['gap_K']}")
    return EXIT_OK if rep.passed else EXIT_FAIL


DISPATCH = {"limit": _limit, "box-hull": _box, "box-closed": _box, "scenario": _scenario,
            "suite": _suite, "group-axioms": _group_axioms, "closure-base": _closure_base}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse: --help exits 0, usage errors exit 2
        return int(e.code or 0)
    handler = _set_verb if args.verb in SET_VERBS else DISPATCH[args.verb]
    try:
        return handler(args)
    except (PreconditionError, GuardError, ValueError) as e:
        if args.json:
            print(dumps({"schema": SCHEMA, "error": type(e).__name__, "message": str(e)}))
        else:
            print(f"gconverge: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
