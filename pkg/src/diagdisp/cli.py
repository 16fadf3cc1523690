"""``diagdisp`` command line.

Exit codes: 0 ok, 2 invalid input, 3 verification failure, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .bounds import alpha_grid, bounds_report
from .configuration import build_config
from .errors import BudgetExceeded, DiagDispError
from .formats import FormatError, dumps, points_csv, read_points_csv
from .oracle import dispersion
from .plots import config_svg, step_svg
from .scalar import DEFAULT_TOL, format_scalar, json_scalar, parse_scalar
from .sequence import alpha_iterative, endpoint_closed_form
from .suites import SUITES, run_suite

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_BUDGET = 0, 2, 3, 4
FIGURE_SIZES = (5, 12, 19, 26)


class UsageError(Exception):
    pass


def _scalar_arg(text: str):
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def construct_report(r, d: int, tol: float = DEFAULT_TOL) -> dict:
    cfg = build_config(r, d)
    res = dispersion(cfg.points())
    b = bounds_report(r)
    return {
        "r": json_scalar(cfg.r),
        "alpha": alpha_iterative(r, tol).alpha,
        "n_r": cfg.n_r,
        "config": [[json_scalar(c) for c in p] for p in cfg.points()],
        "bounds": {
            "thm1": b.thm1,
            "alpha_ceiling": b.alpha_ceiling,
            "alpha_paper_floor": b.alpha_paper_floor,
            "sosnovec": b.sosnovec,
        },
        "dispersion": res.to_json(),
    }


def cmd_construct(args) -> int:
    if args.d < 1:
        raise UsageError("--d must be >= 1")
    if args.format == "json":
        _emit(dumps(construct_report(args.r, args.d, args.tol)), args.out)
        return EXIT_OK
    cfg = build_config(args.r, args.d)
    if args.format == "svg":
        _emit(config_svg(cfg), args.out)
    else:
        _emit(points_csv(cfg.points(), args.d), args.out)
    return EXIT_OK


def scan_values(r_min: float, r_max: float, steps: int, tol: float = DEFAULT_TOL):
    if not (0.25 < r_min < r_max <= 0.5):
        raise UsageError("scan needs 1/4 < r_min < r_max <= 1/2")
    if steps < 2:
        raise UsageError("steps must be >= 2")
    rs = np.linspace(r_min, r_max, steps)
    return rs, alpha_grid(rs, tol)


def cmd_scan(args) -> int:
    rs, alphas = scan_values(float(args.r_min), float(args.r_max), args.steps, args.tol)
    if args.format == "svg":
        _emit(step_svg(float(args.r_min), float(args.r_max), list(zip(rs, alphas))), args.out)
    else:
        lines = ["r,alpha"] + [f"{float(r)!r},{int(a)}" for r, a in zip(rs, alphas)]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_dispersion(args) -> int:
    try:
        with open(args.input, newline="") as fh:
            d, points = read_points_csv(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from exc
    res = dispersion(points, d)
    if args.format == "table":
        rows = [("points", str(len(points))), ("dimension", str(d)), ("dispersion", format_scalar(res.value))]
        rows.append(("witness", str(res.witness)))
        width = max(len(k) for k, _ in rows)
        _emit("".join(f"{k:<{width}}  {v}\n" for k, v in rows), args.out)
    else:
        _emit(dumps(res.to_json()), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join([*SUITES, 'all'])}")
    ok, details = run_suite(args.suite)
    if ok:
        print(f"{args.suite}: pass")
        return EXIT_OK
    _emit(dumps({"suite": args.suite, "ok": False, "details": details}), None)
    return EXIT_VERIFY


def cmd_bounds(args) -> int:
    report = bounds_report(args.r).to_json()
    if args.format == "table":
        width = max(len(k) for k in report)
        _emit("".join(f"{k:<{width}}  {v}\n" for k, v in report.items()), args.out)
    else:
        _emit(dumps(report), args.out)
    return EXIT_OK


def cmd_figures(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for n in FIGURE_SIZES:
        # |q(r)| = n exactly at the left endpoint R_n of its step.
        cfg = build_config(endpoint_closed_form(n), 2)
        path = out / f"config_{n}.svg"
        path.write_text(config_svg(cfg))
        written.append(path)
    rs, alphas = scan_values(0.2501, 0.5, 2000)
    path = out / "step_function.svg"
    path.write_text(step_svg(0.26, 0.5))
    written.append(path)
    path = out / "step_function_scan.csv"
    path.write_text("r,alpha\n" + "".join(f"{float(r)!r},{int(a)}\n" for r, a in zip(rs, alphas)))
    written.append(path)
    for p in written:
        print(p)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diagdisp", description="Low-dispersion diagonal point sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit the diagonal configuration for r")
    p.add_argument("--r", type=_scalar_arg, required=True, help="volume, p/q or decimal")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("scan", help="tabulate alpha(r) on a grid")
    p.add_argument("r_min", type=_scalar_arg)
    p.add_argument("r_max", type=_scalar_arg)
    p.add_argument("steps", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("dispersion", help="dispersion of a CSV point file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_dispersion)

    p = sub.add_parser("verify", help="run a named property suite")
    p.add_argument("--suite", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="alpha and the upper bounds at r")
    p.add_argument("--r", type=_scalar_arg, required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("figures", help="write configuration and step-function SVGs")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, FormatError, DiagDispError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
