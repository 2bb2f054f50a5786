"""Command-line front end: ``digitrep operator|verify|plot-data``."""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .errors import DomainError
from .lattice import LatticeSpec
from .linalg import dumps_matrix, format_real, matrix_to_csv
from .numeral import as_rational
from . import operators as ops
from . import plotdata
from .physics import TwistSpec, twisted_shift

OPERATORS = {
    "x": None,
    "p": None,
    "x_digit": "s",
    "p_digit": "r",
    "shift": "A",
    "projector": "p",
    "twisted_shift": "phi",
    "coefficients": "r",
}

# argparse treats "-1/2" as an option unless told that it is a number
_NEGATIVE = re.compile(r"^-\d+$|^-\d*\.\d+$|^-\d+/\d+$")
_PI_FORM = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?\*?pi(?:/(\d+))?$")


class UsageError(Exception):
    """Bad command-line input (exit status 2)."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec: LatticeSpec
    fmt: Optional[str]
    out: Optional[str]
    tol: float


def parse_phase(text: str) -> float:
    """Radians from ``"0.5"``, ``"1/3"``, ``"pi"``, ``"-pi/2"``, ``"3*pi/4"`` or ``"2pi"``."""
    t = text.strip().replace(" ", "")
    match = _PI_FORM.match(t)
    if match:
        sign, coef, den = match.groups()
        value = Fraction(coef) if coef else Fraction(1)
        if den:
            value /= int(den)
        return (-1 if sign == "-" else 1) * float(value) * math.pi
    try:
        return float(as_rational(t))
    except (DomainError, TypeError):
        pass
    try:
        value = float(t)
    except ValueError:
        raise UsageError(f"cannot read phase {text!r}") from None
    if not math.isfinite(value):
        raise UsageError("phase must be finite")
    return value


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (DomainError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"expected an integer or 'num/den', got {text!r}") from exc


def _integer(text: str) -> int:
    value = _rational(text)
    if value.denominator != 1:
        raise UsageError(f"expected an integer index, got {text!r}")
    return int(value)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=2, help="radix (default 2)")
    common.add_argument("--n-minus", type=int, default=1, help="digits after the point (default 1)")
    common.add_argument("--n-plus", type=int, default=1, help="digits before the point (default 1)")
    common.add_argument("--d1-x", type=_rational, default=Fraction(0), help="least coordinate digit, e.g. -1/2")
    common.add_argument("--d1-p", type=_rational, default=Fraction(0), help="least momentum digit, e.g. -1/2")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default=None)
    common.add_argument("--out", default=None, help="write to this file instead of stdout")
    common.add_argument("--tol", type=float, default=1e-12, help="numerical tolerance (default 1e-12)")

    parser = argparse.ArgumentParser(prog="digitrep", description="Digit operators on finite lattices.")
    sub = parser.add_subparsers(dest="command", required=True)

    op = sub.add_parser("operator", parents=[common], help="write an operator matrix")
    op.add_argument("name", choices=sorted(OPERATORS))
    op.add_argument("arg", nargs="?", default=None, help="digit index, shift, momentum or phase")

    ver = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    ver.add_argument("--radices", type=int, nargs="+", default=[2, 3])
    ver.add_argument("--max-n", type=int, default=3)
    ver.add_argument("--golden", choices=("appendix-a",), default=None)
    ver.add_argument("--inject-fault", action="store_true", help="perturb one matrix entry (test mode)")

    plot = sub.add_parser("plot-data", parents=[common], help="write a plot data table")
    plot.add_argument("kind", choices=plotdata.PLOT_KINDS)
    plot.add_argument("--s", type=_integer, default=0, help="digit index (digit plots)")
    plot.add_argument("--x-min", type=_rational, default=None)
    plot.add_argument("--x-max", type=_rational, default=None)
    plot.add_argument("--d1-min", type=_rational, default=Fraction(-1))
    plot.add_argument("--d1-max", type=_rational, default=Fraction(0))
    plot.add_argument("--steps", type=int, default=8)

    for p in (parser, common, op, ver, plot):
        p._negative_number_matcher = _NEGATIVE
    return parser


def _config(args) -> RunConfig:
    try:
        spec = LatticeSpec(args.q, args.n_minus, args.n_plus, args.d1_x, args.d1_p)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    return RunConfig(args.command, spec, args.fmt, args.out, args.tol)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _need(name: str, arg: Optional[str]) -> str:
    if OPERATORS[name] is None:
        if arg is not None:
            raise UsageError(f"operator {name} takes no argument")
        return ""
    if arg is None:
        raise UsageError(f"operator {name} needs an argument {OPERATORS[name]}")
    return arg


def build_operator(name: str, arg: Optional[str], spec: LatticeSpec):
    arg = _need(name, arg)
    if name == "x":
        return ops.coordinate_operator(spec)
    if name == "p":
        return ops.momentum_operator(spec)
    if name == "x_digit":
        return ops.coordinate_digit(_integer(arg), spec)
    if name == "p_digit":
        return ops.momentum_digit_oracle(_integer(arg), spec)
    if name == "shift":
        return ops.shift_operator(_rational(arg), spec)
    if name == "projector":
        return ops.projector(_rational(arg), spec)
    if name == "twisted_shift":
        return twisted_shift(TwistSpec(spec, parse_phase(arg)))
    if name == "coefficients":
        return ops.digit_shift_coefficients(_integer(arg), spec)
    raise UsageError(f"unknown operator {name!r}")


def cmd_operator(config: RunConfig, name: str, arg: Optional[str]) -> int:
    result = build_operator(name, arg, config.spec)
    fmt = config.fmt or "json"
    if isinstance(result, ops.ShiftCoefficients):
        if fmt == "csv":
            text = result.to_csv()
        else:
            items = list(result)
            text = json.dumps({"shift": [format_real(a) for a, _ in items],
                               "re": [c.real for _, c in items],
                               "im": [c.imag for _, c in items]}) + "\n"
    elif fmt == "csv":
        text = matrix_to_csv(result)
    else:
        text = dumps_matrix(result) + "\n"
    _emit(text, config.out)
    return 0


def cmd_verify(config: RunConfig, args) -> int:
    from . import verify

    if args.golden:
        report = verify.run_golden(config.tol)
    else:
        try:
            grid = verify.default_grid(args.radices, args.max_n)
        except DomainError as exc:
            raise UsageError(str(exc)) from exc
        report = verify.run_grid(grid, config.tol, inject_fault=args.inject_fault)
    fmt = config.fmt or "text"
    text = {"text": report.to_text, "json": report.to_json, "csv": report.to_csv}[fmt]()
    _emit(text, config.out)
    return 0 if report.passed else 1


def cmd_plot_data(config: RunConfig, args) -> int:
    spec = config.spec
    kind = args.kind
    if kind == "digit-lattice":
        header = ("x", "digit")
        rows = plotdata.digit_lattice(spec, args.s, args.x_min, args.x_max)
    elif kind == "digit-line":
        header = ("x_left", "x_right", "digit")
        lo = args.x_min if args.x_min is not None else -4
        hi = args.x_max if args.x_max is not None else 4
        rows = plotdata.digit_line(spec.q, args.s, spec.d1_x, lo, hi)
    elif kind == "winding-d1":
        header = ("d1", "node", "x_mod_period")
        rows = plotdata.winding_d1(spec.q, spec.n_minus, spec.n_plus, args.d1_min, args.d1_max, args.steps)
    else:
        header = ("segment", "p", "p_mod_1")
        rows = plotdata.winding_momentum(spec.q, spec.n_minus, spec.n_plus, spec.d1_p)
    if (config.fmt or "csv") == "json":
        payload = {"kind": kind, "columns": list(header),
                   "rows": [[v if isinstance(v, int) else float(v) for v in row] for row in rows]}
        text = json.dumps(payload) + "\n"
    else:
        text = plotdata.rows_to_csv(header, rows)
    _emit(text, config.out)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        config = _config(args)
        if args.command == "operator":
            if config.fmt == "text":
                raise UsageError("operator output is json or csv")
            return cmd_operator(config, args.name, args.arg)
        if args.command == "verify":
            return cmd_verify(config, args)
        if config.fmt == "text":
            raise UsageError("plot data output is json or csv")
        return cmd_plot_data(config, args)
    except (UsageError, DomainError, argparse.ArgumentTypeError) as exc:
        print(f"digitrep: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"digitrep: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
