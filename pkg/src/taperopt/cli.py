"""Command-line front end.

    taperopt --input signal.txt [--k K] [--method auto|closed|project|grid]
             [--tol 1e-9] [--max-iter 10000] [--grid-resolution 50]
             [--output result.json] [--smoothed smoothed.txt]

Exit codes: 0 success, 2 bad input, 3 solver failure.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import oracle
from .errors import InfeasibleError, SignalError, SolverError
from .qp import SolverOptions, build_qp, make_report, solve
from .signal import Signal, apply_window

EXIT_OK, EXIT_INPUT, EXIT_SOLVER = 0, 2, 3
KEY_ORDER = ("weights", "mixture", "loss", "stage", "iterations", "degenerate", "n", "k", "converged")


class InputError(Exception):
    pass


def parse_signal(text: str) -> list[float]:
    """Values separated by commas and/or newlines; blank lines are skipped."""
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        for tok in line.split(","):
            tok = tok.strip()
            if not tok:
                raise InputError(f"line {lineno}: empty value")
            try:
                v = float(tok)
            except ValueError:
                raise InputError(f"line {lineno}: cannot parse {tok!r} as a number") from None
            if not math.isfinite(v):
                raise InputError(f"line {lineno}: non-finite value {tok!r}")
            values.append(v)
    return values


def fmt(v: float) -> str:
    return f"{float(v) + 0.0:.17g}"


def render(report, converged: bool = True) -> str:
    """Stable-key-order JSON with 17 significant digits per number."""
    fields = {
        "weights": "[" + ", ".join(fmt(v) for v in report.window) + "]",
        "mixture": "[" + ", ".join(fmt(v) for v in report.mixture) + "]",
        "loss": fmt(report.loss),
        "stage": f'"{report.stage}"',
        "iterations": str(int(report.iterations)),
        "degenerate": "true" if report.degenerate else "false",
        "n": str(report.n),
        "k": str(report.k_eff),
        "converged": "true" if converged else "false",
    }
    body = ",\n".join(f'  "{key}": {fields[key]}' for key in KEY_ORDER)
    return "{\n" + body + "\n}\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="taperopt",
        description="Optimal symmetric tapered moving-average window for a cyclic signal.",
    )
    ap.add_argument("--input", required=True, help="signal file ('-' for stdin)")
    ap.add_argument("--k", type=int, default=None, help="effective half width (default (N-1)/2)")
    ap.add_argument("--method", choices=("auto", "closed", "project", "grid"), default="auto")
    ap.add_argument("--tol", type=float, default=1e-9, help="simplex feasibility tolerance")
    ap.add_argument("--max-iter", type=int, default=10000)
    ap.add_argument("--grid-resolution", type=int, default=50)
    ap.add_argument("--output", default=None, help="result file (default stdout)")
    ap.add_argument("--smoothed", default=None, help="write the smoothed signal here")
    return ap


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _emit(args, y, report, converged=True):
    _write(args.output, render(report, converged))
    if args.smoothed:
        x = apply_window(y, report.window)
        _write(args.smoothed, "".join(fmt(v) + "\n" for v in x))


def run(args) -> int:
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        y = Signal(parse_signal(text))
        if args.k is not None and not 1 <= args.k <= y.half_k:
            raise InputError(f"--k must be in 1..{y.half_k}, got {args.k}")
        if args.tol <= 0 or args.max_iter < 1 or args.grid_resolution < 1:
            raise InputError("--tol, --max-iter and --grid-resolution must be positive")
    except (OSError, UnicodeDecodeError, InputError, SignalError) as exc:
        print(f"taperopt: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.method == "grid":
        try:
            res = oracle.grid_search(y, args.k, args.grid_resolution)
        except Exception as exc:
            print(f"taperopt: {exc}", file=sys.stderr)
            return EXIT_SOLVER
        qp = build_qp(y, args.k)
        _emit(args, y, make_report(y, qp, res.p, "grid-fallback", res.evaluated))
        return EXIT_OK

    opts = SolverOptions(method=args.method, feas_tol=args.tol, max_iter=args.max_iter)
    try:
        report = solve(y, args.k, opts)
    except SolverError as exc:
        print(f"taperopt: {exc}", file=sys.stderr)
        report = getattr(exc, "report", None)
        if report is not None:
            _emit(args, y, report, converged=False)
        return EXIT_SOLVER
    except InfeasibleError as exc:
        print(f"taperopt: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    _emit(args, y, report)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
