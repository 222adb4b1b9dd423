"""Command-line front end.

Exit codes: 0 when no hypothesis-satisfying violation was found, 2 when at
least one was, 1 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from ._backend import BACKEND
from .bounds import Options, evaluate
from .campaign import VerificationCampaign, rows_to_csv, run_campaign, sweep
from .convexity import check_s_concave, check_s_convex, hadamard_check
from .errors import OstrowskiError
from .funcmodel import Derived, FunctionSpec, Interval
from .kernels import identity_residual
from .means import (
    MeansInput,
    arithmetic_mean,
    gen_log_mean,
    identric_mean,
    prop_log_identric,
    prop_power_bound,
)
from .quadrature import QuadratureConfig
from .results import DEFAULT_TOLERANCE, EQUATIONS

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2

_GLOBAL_DEFAULTS = {
    "format": None,
    "quad_tol": 1e-11,
    "quad_depth": 60,
    "tolerance": DEFAULT_TOLERANCE,
    "out": None,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_options(defaults: bool) -> argparse.ArgumentParser:
    # added to the top-level parser and to every subcommand, so the flags
    # are accepted on either side of the subcommand name
    parent = _Parser(add_help=False)
    d = (lambda k: _GLOBAL_DEFAULTS[k]) if defaults else (lambda k: argparse.SUPPRESS)
    parent.add_argument("--format", choices=["json", "csv"], default=d("format"))
    parent.add_argument("--quad-tol", type=float, default=d("quad_tol"))
    parent.add_argument("--quad-depth", type=int, default=d("quad_depth"))
    parent.add_argument("--tolerance", type=float, default=d("tolerance"))
    parent.add_argument("--out", type=Path, default=d("out"))
    return parent


def _m_value(text: str) -> float | str:
    if text == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("--M takes 'auto' or a number") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ostrowski",
        description="Evaluate and verify Ostrowski-type inequalities for s-convex second derivatives.",
        parents=[_global_options(True)],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = [_global_options(False)]

    def fn_iv(p, x_required=False):
        p.add_argument("--function", required=True, help="family id, e.g. poly:0,0,0,1 or pow_s:0.5")
        p.add_argument("--a", type=float, required=True)
        p.add_argument("--b", type=float, required=True)
        if x_required:
            p.add_argument("--x", type=float, required=True)

    p = sub.add_parser("identity", parents=common, help="both sides of the integral identity at x")
    fn_iv(p, x_required=True)

    p = sub.add_parser("bound", parents=common, help="evaluate one inequality")
    p.add_argument("--eq", required=True, choices=sorted(EQUATIONS))
    fn_iv(p)
    p.add_argument("--x", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--M", type=_m_value, default="auto")
    p.add_argument("--relaxed", action="store_true", help="use the relaxed form of e2.6 / e1.2")
    p.add_argument("--no-gate", action="store_true", help="assume the convexity hypothesis")
    p.add_argument("--grid", type=int, default=21)

    p = sub.add_parser("convexity", parents=common, help="sampled s-convexity check of |f^(k)|^q")
    fn_iv(p)
    p.add_argument("--power", "--q", dest="power", type=float, default=1.0)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--order", type=int, default=2, choices=[0, 1, 2])
    p.add_argument("--grid", type=int, default=21)
    p.add_argument("--concave", action="store_true")
    p.add_argument("--signed", action="store_true", help="check f^(k) itself instead of |f^(k)|^q")
    p.add_argument("--hadamard", action="store_true", help="also report the Hadamard inequality for f")

    p = sub.add_parser("means", parents=common, help="special means and the propositions built on them")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--prop", choices=["ee1", "ee2", "ee3", "p6"])
    g.add_argument("--show", choices=["A", "I", "Lp"])
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--x", type=float)
    p.add_argument("--y", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--no-gate", action="store_true")

    p = sub.add_parser("sweep", parents=common, help="lhs/rhs on a uniform x-grid")
    p.add_argument("--eq", required=True, choices=sorted(EQUATIONS))
    fn_iv(p)
    p.add_argument("--s", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--M", type=_m_value, default="auto")
    p.add_argument("--n", type=int, default=21)
    p.add_argument("--no-gate", action="store_true")

    p = sub.add_parser("campaign", parents=common, help="run a full verification campaign")
    p.add_argument("--config", type=Path, help="JSON or key = value campaign file")
    p.add_argument("--no-gate", action="store_true")
    return parser


def _opt(args, name):
    return getattr(args, name, _GLOBAL_DEFAULTS[name])


def _options(args, gate: bool = True, grid_n: int = 21) -> Options:
    return Options(
        cfg=QuadratureConfig(_opt(args, "quad_tol"), _opt(args, "quad_depth")),
        tolerance=_opt(args, "tolerance"),
        gate=gate,
        grid_n=grid_n,
    )


def _emit(args, text: str) -> None:
    out = _opt(args, "out")
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _result_exit(results) -> int:
    return EXIT_VIOLATION if any(r.hypothesis_checked and not r.holds for r in results) else EXIT_OK


def _results_csv(results) -> str:
    rows = [{**r.to_dict(), "equation_id": r.equation_id} for r in results]
    return rows_to_csv(rows, ["equation_id", "x", "lhs", "rhs", "margin", "holds", "hypothesis_checked"])


def _cmd_identity(args) -> int:
    f, iv = FunctionSpec.parse(args.function), Interval(args.a, args.b)
    ev = identity_residual(f, args.x, iv, _options(args).cfg)
    if _opt(args, "format") == "csv":
        _emit(args, rows_to_csv([ev.to_dict()], ["x", "lhs_signed", "rhs_identity", "residual"]))
    else:
        _emit(args, _dump({"function": f.id, "a": iv.a, "b": iv.b, **ev.to_dict()}))
    return EXIT_OK


def _cmd_bound(args) -> int:
    f, iv = FunctionSpec.parse(args.function), Interval(args.a, args.b)
    eq = args.eq
    if args.relaxed:
        eq = {"e2.6": "e2.6b", "e2.6a": "e2.6b", "e1.2": "e1.2b"}.get(eq, eq)
    r = evaluate(eq, f, iv, args.x, s=args.s, p=args.p, q=args.q, M=args.M,
                 opts=_options(args, gate=not args.no_gate, grid_n=args.grid))
    _emit(args, _results_csv([r]) if _opt(args, "format") == "csv" else _dump(r.to_dict()))
    return _result_exit([r])


def _cmd_convexity(args) -> int:
    f, iv = FunctionSpec.parse(args.function), Interval(args.a, args.b)
    g = Derived(f, order=args.order, power=args.power, absolute=not args.signed)
    check = check_s_concave if args.concave else check_s_convex
    rep = check(g, args.s, iv, args.grid)
    payload: dict[str, Any] = {"function": f.id, "order": args.order, "power": args.power, **rep.to_dict()}
    results = []
    if args.hadamard:
        results = list(hadamard_check(f, args.s, iv, _options(args).cfg, tolerance=_opt(args, "tolerance")))
        payload["hadamard"] = [r.to_dict() for r in results]
    if _opt(args, "format") == "csv":
        cols = ["function", "order", "power", "mode", "s", "verdict", "worst_violation", "samples", "slack"]
        _emit(args, rows_to_csv([payload], cols))
    else:
        _emit(args, _dump(payload))
    return _result_exit(results)


def _cmd_means(args) -> int:
    if args.show:
        if args.x is None or args.y is None:
            raise UsageError("--show needs --x and --y")
        if args.show == "A":
            value = arithmetic_mean(args.x, args.y)
        elif args.show == "I":
            value = identric_mean(args.x, args.y)
        else:
            if args.p is None:
                raise UsageError("--show Lp needs --p")
            value = gen_log_mean(args.x, args.y, args.p)
        payload = {"mean": args.show, "x": args.x, "y": args.y, "p": args.p, "value": value}
        if _opt(args, "format") == "csv":
            _emit(args, rows_to_csv([payload], ["mean", "x", "y", "p", "value"]))
        else:
            _emit(args, _dump(payload))
        return EXIT_OK
    if args.a is None or args.b is None:
        raise UsageError("--prop needs --a and --b")
    s = args.s
    if s is None:
        if args.prop != "p6":
            raise UsageError(f"--prop {args.prop} needs --s")
        s = 1.0
    inp = MeansInput(args.a, args.b, s, x=args.x, p=args.p, q=args.q)
    opts = _options(args, gate=not args.no_gate)
    r = prop_log_identric(inp, opts) if args.prop == "p6" else prop_power_bound(inp, args.prop, opts)
    _emit(args, _results_csv([r]) if _opt(args, "format") == "csv" else _dump(r.to_dict()))
    return _result_exit([r])


def _cmd_sweep(args) -> int:
    f, iv = FunctionSpec.parse(args.function), Interval(args.a, args.b)
    params = {"s": args.s, "p": args.p, "q": args.q, "M": args.M}
    rows = sweep(f, iv, args.eq, params, args.n, _options(args, gate=not args.no_gate))
    if _opt(args, "format") == "json":
        _emit(args, _dump(rows))
    else:
        _emit(args, rows_to_csv(rows))
    bad = any(r["hypothesis_checked"] and r["holds"] is False for r in rows)
    return EXIT_VIOLATION if bad else EXIT_OK


def _cmd_campaign(args) -> int:
    c = VerificationCampaign.load(args.config) if args.config else VerificationCampaign()
    if args.no_gate:
        c.gate = False
    # explicit global flags override the config file
    for flag, attr in (("quad_tol", "quad_tol"), ("quad_depth", "quad_depth"), ("tolerance", "tolerance")):
        if flag in vars(args) and vars(args)[flag] != _GLOBAL_DEFAULTS[flag]:
            setattr(c, attr, vars(args)[flag])
    report = run_campaign(c)
    _emit(args, report.to_csv() if _opt(args, "format") == "csv" else report.to_json())
    return report.exit_code


_COMMANDS = {
    "identity": _cmd_identity,
    "bound": _cmd_bound,
    "convexity": _cmd_convexity,
    "means": _cmd_means,
    "sweep": _cmd_sweep,
    "campaign": _cmd_campaign,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, OstrowskiError, OSError) as exc:
        print(f"ostrowski {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
