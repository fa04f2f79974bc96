"""Command-line front end.

Exit codes: 0 success, 1 validation or suite failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import formats
from .aggregation import average_landscape, compare_average_landscapes, rank_k_transform
from .inversion import ReconstructionError, reconstruct
from .landscape import compute_landscape, l1_distance, validate_landscape
from .measures import PersistenceMeasure, mean
from .suite import run_suite
from .transport import DIAGONAL, check_stability, wasserstein_distance


class InputError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_diagram(path: str) -> PersistenceMeasure:
    try:
        return formats.parse_diagram(_read(path))
    except formats.FormatError as exc:
        raise InputError(f"{path}: {exc}")


def _load_landscape(path: str):
    try:
        return formats.parse_landscape(_read(path))
    except formats.FormatError as exc:
        raise InputError(f"{path}: {exc}")


def _print_value(value: Fraction, digits: int) -> None:
    print(f"{formats.format_rational(value)} ({formats.decimal_string(value, digits)})")


def _cmd_landscape(args) -> int:
    landscape = compute_landscape(_load_diagram(args.diagram))
    _write_output(formats.write_landscape(landscape), args.output)
    return 0


def _cmd_eval(args) -> int:
    landscape = _load_landscape(args.landscape)
    if args.a <= 0:
        raise InputError(f"mass level must be positive, got {args.a}")
    _print_value(landscape.value(args.a, args.t), args.digits)
    return 0


def _cmd_invert(args) -> int:
    landscape = _load_landscape(args.landscape)
    try:
        measure = reconstruct(landscape)
    except ReconstructionError as exc:
        print(f"inversion failed: {exc}", file=sys.stderr)
        return 1
    _write_output(formats.write_diagram(measure), args.output)
    return 0


def _cmd_dist(args) -> int:
    first = _load_diagram(args.first)
    second = _load_diagram(args.second)
    if args.metric == "w1rk":
        cost, plan = wasserstein_distance(first, second)
        _print_value(cost, args.digits)
        if args.plan:
            rows = []
            for src, dst, mass in plan.flows:
                src_txt = "Δ Δ" if src is DIAGONAL else f"{src.birth} {src.death}"
                dst_txt = "Δ Δ" if dst is DIAGONAL else f"{dst.birth} {dst.death}"
                rows.append("\t".join(src_txt.split() + dst_txt.split() + [str(mass)]))
            _write_output("\n".join(rows) + "\n" if rows else "", args.plan)
    else:
        value = l1_distance(compute_landscape(first), compute_landscape(second))
        _print_value(value, args.digits)
    return 0


def _cmd_apl(args) -> int:
    samples = [_load_diagram(path) for path in args.diagrams]
    try:
        landscape = average_landscape(samples)
    except ValueError as exc:
        raise InputError(str(exc))
    _write_output(formats.write_landscape(landscape), args.output)
    return 0


def _cmd_mean(args) -> int:
    samples = [_load_diagram(path) for path in args.diagrams]
    try:
        measure = mean(samples)
    except ValueError as exc:
        raise InputError(str(exc))
    _write_output(formats.write_diagram(measure), args.output)
    return 0


def _cmd_rank_k(args) -> int:
    measure = _load_diagram(args.diagram)
    try:
        result = rank_k_transform(measure, args.k)
    except ValueError as exc:
        raise InputError(str(exc))
    _write_output(formats.write_diagram(result), args.output)
    return 0


def _cmd_compare_apl(args) -> int:
    samples = [_load_diagram(path) for path in args.diagrams]
    try:
        report = compare_average_landscapes(samples, args.k, args.t, args.h)
    except ValueError as exc:
        raise InputError(str(exc))
    print(f"level {report.level}")
    print(f"t {report.t}")
    print(f"h {report.h}")
    print(f"hypothesis-distinct {str(report.hypothesis_distinct).lower()}")
    print(f"hypothesis-mass {str(report.hypothesis_mass).lower()}")
    print(f"cpl {report.cpl_value}")
    print(f"apl {report.apl_value}")
    print(f"average-dominates {str(report.average_dominates).lower()}")
    return 0


def _cmd_check(args) -> int:
    if args.second is not None:
        report = check_stability(_load_diagram(args.first), _load_diagram(args.second))
        print(f"l1-distance {report.l1}")
        print(f"transport {report.transport}")
        print(f"bound {report.bound}")
        print(f"holds {str(report.holds).lower()}")
        return 0 if report.holds else 1
    report = validate_landscape(_load_landscape(args.first))
    for name in ("level_monotone", "unit_slopes", "left_continuous", "rect_nonnegative"):
        check = getattr(report, name)
        status = "pass" if check.passed else f"fail ({check.witness})"
        print(f"{name.replace('_', '-')} {status}")
    print(f"overall {'pass' if report.ok else 'fail'}")
    return 0 if report.ok else 1


def _cmd_suite(args) -> int:
    report = run_suite(seed=args.seed, trial_scale=args.trial_scale, max_atoms=args.max_atoms)
    sys.stdout.write(report.render())
    return 0 if report.passed else 1


def _cmd_plot(args) -> int:
    landscape = _load_landscape(args.landscape)
    try:
        if args.nu0:
            if args.t is None:
                raise InputError("--nu0 needs --t")
            table = formats.quadrant_mass_table(
                landscape, args.t, args.h_min, args.h_max, args.h_steps, args.digits
            )
        else:
            table = formats.landscape_table(
                landscape,
                args.a_min,
                args.a_max,
                args.a_steps,
                args.t_min,
                args.t_max,
                args.t_steps,
                args.digits,
            )
    except ValueError as exc:
        raise InputError(str(exc))
    _write_output(table, args.output)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpland",
        description="Exact continuous persistence landscapes: compute, invert, compare.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("landscape", help="compute the landscape of a diagram file")
    p.add_argument("diagram")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_landscape)

    p = sub.add_parser("eval", help="evaluate a landscape file at (a, t)")
    p.add_argument("landscape")
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--t", type=_rational, required=True)
    p.add_argument("--digits", type=int, default=6)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("invert", help="reconstruct the measure of a landscape file")
    p.add_argument("landscape")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_invert)

    p = sub.add_parser("dist", help="distance between two diagram files")
    p.add_argument("metric", choices=["w1rk", "l1"])
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--plan", default=None, help="write the optimal transport plan (w1rk)")
    p.add_argument("--digits", type=int, default=6)
    p.set_defaults(func=_cmd_dist)

    p = sub.add_parser("apl", help="average landscape of diagram files")
    p.add_argument("diagrams", nargs="+")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_apl)

    p = sub.add_parser("mean", help="mean measure of diagram files")
    p.add_argument("diagrams", nargs="+")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_mean)

    p = sub.add_parser("rank-k", help="drop the first k-1 landscape levels and reconstruct")
    p.add_argument("diagram")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_rank_k)

    p = sub.add_parser("compare-apl", help="average landscape vs mean-measure landscape")
    p.add_argument("diagrams", nargs="+")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=_rational, required=True)
    p.add_argument("--h", type=_rational, required=True)
    p.set_defaults(func=_cmd_compare_apl)

    p = sub.add_parser(
        "check",
        help="validate a landscape file, or check the stability bound for two diagrams",
    )
    p.add_argument("first")
    p.add_argument("second", nargs="?", default=None)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("suite", help="run the seeded property suite")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trial-scale", type=float, default=1.0)
    p.add_argument("--max-atoms", type=int, default=30)
    p.set_defaults(func=_cmd_suite)

    p = sub.add_parser("plot", help="export a table of landscape values")
    p.add_argument("landscape")
    p.add_argument("--a-min", type=_rational, default=Fraction(1))
    p.add_argument("--a-max", type=_rational, default=Fraction(1))
    p.add_argument("--a-steps", type=int, default=1)
    p.add_argument("--t-min", type=_rational, default=Fraction(0))
    p.add_argument("--t-max", type=_rational, default=Fraction(10))
    p.add_argument("--t-steps", type=int, default=11)
    p.add_argument("--nu0", action="store_true", help="tabulate quadrant mass at fixed --t")
    p.add_argument("--t", type=_rational, default=None)
    p.add_argument("--h-min", type=_rational, default=Fraction(0))
    p.add_argument("--h-max", type=_rational, default=Fraction(5))
    p.add_argument("--h-steps", type=int, default=11)
    p.add_argument("--digits", type=int, default=6)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_plot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
