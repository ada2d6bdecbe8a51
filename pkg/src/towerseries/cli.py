"""Command-line front end.

Towers print derivatives ``f, f', f'', ...``; series-based commands print
Taylor coefficients ``u_0, u_1, ...`` about the expansion point.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Any, List, Optional, Sequence

from . import series as S
from . import tower as T
from .applications import chains, lambert, stirling
from .coeffs import BINARY64, RATIONAL, render
from .errors import TowerSeriesError
from .expr import ExprSyntaxError, parse_expr, series_of, tower_function
from .stream import drop, run_deep, take

FIELDS = {"rat": RATIONAL, "f64": BINARY64}


class UsageError(Exception):
    """Bad input detected after argument parsing; maps to exit code 2."""


def _number(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _non_negative(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {n}")
    return n


def _parse(src: str):
    try:
        return parse_expr(src)
    except ExprSyntaxError as exc:
        raise UsageError(f"cannot parse {src!r}: {exc}") from exc


# -- output ----------------------------------------------------------------


def format_rows(values: Sequence[Any], fmt: str, columns: Sequence[str] = ("value",)) -> str:
    """Render ``values`` (one scalar or tuple per k) as table, csv or json."""
    rows = [v if isinstance(v, tuple) else (v,) for v in values]
    if fmt == "json":
        out = [dict(k=k, **{c: render(x) for c, x in zip(columns, row)}) for k, row in enumerate(rows)]
        return json.dumps(out) + "\n"
    sep = "\t" if fmt == "table" else ","
    lines = [] if fmt == "table" else [sep.join(("k",) + tuple(columns))]
    lines += [sep.join([str(k)] + [render(x) for x in row]) for k, row in enumerate(rows)]
    return "\n".join(lines) + "\n"


# -- subcommands -----------------------------------------------------------


def cmd_tower(args) -> List[Any]:
    field = FIELDS[args.field]
    fn = tower_function(_parse(args.expr), field)
    return take(args.terms, fn(T.dvar(field.coerce(args.at))))


def cmd_series(args) -> List[Any]:
    field = FIELDS[args.field]
    return take(args.terms, series_of(_parse(args.expr), args.at, field))


def _recentre(head, s: S.Series) -> S.Series:
    return S.Series.cons(lambda: head, lambda: s.tail)


def cmd_revert(args) -> List[Any]:
    field = FIELDS[args.field]
    e = _parse(args.expr)
    x0 = field.coerce(args.at)
    if args.method == "chain":
        return take(args.terms, chains.revchain(tower_function(e, field), x0))
    u = series_of(e, x0, field)
    shifted = u - u.head
    if args.method == "series":
        return take(args.terms, _recentre(x0, S.sreverse(shifted)))
    iterations = math.ceil(math.log2(args.terms)) + 1
    approximant = drop(iterations, S.newtreverse(shifted)).head
    return take(args.terms, _recentre(x0, approximant))


def cmd_compose(args) -> List[Any]:
    field = FIELDS[args.field]
    g, f = _parse(args.outer), _parse(args.inner)
    x0 = field.coerce(args.at)
    if args.method == "chain":
        ft = tower_function(f, field)(T.dvar(x0))
        gt = tower_function(g, field)(T.dvar(T.hd(ft)))
        return take(args.terms, chains.compchain(gt, ft))
    fs = series_of(f, x0, field)
    gs = series_of(g, fs.head, field)
    return take(args.terms, S.scompose(gs, fs - fs.head))


def cmd_lambert(args) -> List[Any]:
    field = FIELDS[args.field]
    if args.mode == "tower":
        return take(args.terms, lambert.lambert_w_tower(field))
    return take(args.terms, lambert.lambert_w_series(args.center, field))


def cmd_stirling(args):
    n = args.terms
    back = take(n, stirling.stirling_backsub()) if args.method != "laplace" else None
    lap = [Fraction(1)] + take(n - 1, stirling.stirling_laplace()) if args.method != "backsub" else None
    if args.method == "backsub":
        return back
    if args.method == "laplace":
        return lap
    return list(zip(back, lap))


def _linspace(lo: float, hi: float, n: int) -> List[float]:
    if n == 1:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def cmd_plot_data(args) -> str:
    if args.builtin == "lambert":
        w0 = float(args.center)
        x0 = lambert.lambert_center(w0)
        coeffs = take(args.order + 1, lambert.lambert_w_series(w0))
    else:
        x0 = float(args.center)
        coeffs = take(args.order + 1, series_of(_parse(args.expr), x0, BINARY64))
    lines = ["x,value"]
    for x in _linspace(float(args.xmin), float(args.xmax), args.samples):
        lines.append(f"{render(x)},{render(S.horner(coeffs, x - x0))}")
    return "\n".join(lines) + "\n"


# -- argument parsing ------------------------------------------------------


def _common(p: argparse.ArgumentParser, field_default: str = "rat"):
    p.add_argument("--terms", type=_positive, default=8, help="number of terms (default 8)")
    p.add_argument("--field", choices=sorted(FIELDS), default=field_default,
                   help=f"coefficient field (default {field_default})")
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="towerseries",
                                     description="Lazy derivative towers and power series.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("tower", help="derivatives of an expression at a point")
    p.add_argument("--expr", required=True)
    p.add_argument("--at", "--center", dest="at", type=_number, default=Fraction(0))
    _common(p)
    p.set_defaults(run=cmd_tower)

    p = sub.add_parser("series", help="Taylor coefficients of an expression about a point")
    p.add_argument("--expr", required=True)
    p.add_argument("--center", "--at", dest="at", type=_number, default=Fraction(0))
    _common(p)
    p.set_defaults(run=cmd_series)

    p = sub.add_parser("revert", help="inverse function: derivatives (chain) or coefficients (series, newton)")
    p.add_argument("--expr", required=True)
    p.add_argument("--at", type=_number, default=Fraction(0))
    p.add_argument("--method", choices=["chain", "series", "newton"], default="chain")
    _common(p)
    p.set_defaults(run=cmd_revert)

    p = sub.add_parser("compose", help="outer(inner(x)): derivatives (chain) or coefficients (series)")
    p.add_argument("--outer", required=True)
    p.add_argument("--inner", required=True)
    p.add_argument("--at", type=_number, default=Fraction(0))
    p.add_argument("--method", choices=["chain", "series"], default="chain")
    _common(p)
    p.set_defaults(run=cmd_compose)

    p = sub.add_parser("lambert", help="Lambert W: tower at 0 or series about W = w0")
    p.add_argument("--mode", choices=["tower", "series"], default="tower")
    p.add_argument("--center", type=_number, default=Fraction(0), help="value w0 of W at the expansion point")
    _common(p, field_default="f64")
    p.set_defaults(run=cmd_lambert)

    p = sub.add_parser("stirling", help="coefficients of the Stirling series")
    p.add_argument("--method", choices=["backsub", "laplace", "both"], default="backsub")
    p.add_argument("--terms", type=_positive, default=8)
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.set_defaults(run=cmd_stirling, field="rat")

    p = sub.add_parser("plot-data", help="CSV samples of a truncated series")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--expr")
    src.add_argument("--builtin", choices=["lambert"])
    p.add_argument("--center", type=_number, default=Fraction(0))
    p.add_argument("--order", type=_non_negative, default=5)
    p.add_argument("--xmin", type=_number, required=True)
    p.add_argument("--xmax", type=_number, required=True)
    p.add_argument("--samples", type=_positive, default=50)
    p.set_defaults(run=cmd_plot_data)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = run_deep(args.run, args)
    except UsageError as exc:
        print(f"towerseries: error: {exc}", file=sys.stderr)
        return 2
    except (TowerSeriesError, ZeroDivisionError, OverflowError) as exc:
        print(f"towerseries: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if isinstance(result, str):
        sys.stdout.write(result)
        return 0
    if args.command == "stirling" and args.method == "both":
        sys.stdout.write(format_rows(result, args.format, ("backsub", "laplace")))
        bad = [k for k, (a, b) in enumerate(result) if a != b]
        if bad:
            print(f"towerseries: derivations disagree at k = {bad}", file=sys.stderr)
            return 1
        return 0
    sys.stdout.write(format_rows(result, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
