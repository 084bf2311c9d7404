"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 truncated or ambiguous result,
3 validation failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import svg
from .coverage import coverage_trace, crossover_bias, default_max_steps, sweep_bias
from .errors import DomainError
from .grid import TorusGrid, parse_direction
from .movement import MovementModel
from .oracle import validate_against_macro

EXIT_OK, EXIT_USAGE, EXIT_TRUNCATED, EXIT_VALIDATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    """Serialise a CSV cell: floats to 12 significant digits, None as empty."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return "" if math.isnan(x) else f"{float(x):.12g}"
    return str(x)


@contextmanager
def _open_out(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def write_csv(path: str | None, header: list[str], rows) -> None:
    with _open_out(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(x) for x in row])


def _grid(args) -> TorusGrid:
    if args.topology == "ring":
        if args.cols is None:
            raise UsageError("--cols is required for a ring")
        return TorusGrid.ring(args.cols)
    return TorusGrid.torus(args.rows, args.cols if args.cols is not None else args.rows)


def _model(args) -> MovementModel:
    if args.model == "uniform":
        return MovementModel.uniform()
    if args.p is None:
        raise UsageError(f"--p is required for model {args.model}")
    if args.model == "biased":
        return MovementModel.biased(args.p)
    return MovementModel.biased_random(args.p, args.r)


def _target(args) -> float:
    if not 0 < args.target <= 100:
        raise UsageError(f"--target must be in (0, 100], got {args.target}")
    return args.target / 100.0


def _direction(args, grid, model):
    if args.direction is None or not model.directional:
        return None
    return parse_direction(grid, args.direction)


def _bias_range(args) -> list[float]:
    start, stop, step = args.bias_range
    if step <= 0 or stop < start:
        raise UsageError("--bias-range needs start <= stop and step > 0")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 10) for i in range(n)]


def cmd_coverage(args) -> int:
    grid, model = _grid(args), _model(args)
    res = coverage_trace(grid, model, s=args.start, d0=_direction(args, grid, model),
                         target_fraction=_target(args), max_steps=args.max_steps)
    tr = res.trace
    write_csv(args.csv, ["step", "start_mass", "gamma", "C_k"],
              ((k, tr.start_mass[k], tr.gamma[k], tr.C[k]) for k in range(len(tr))))
    if res.truncated:
        print("coverage_time=truncated")
        return EXIT_TRUNCATED
    print(f"coverage_time={res.coverage_time}")
    return EXIT_OK


def _sweep_chart(sweep, title: str) -> svg.Chart:
    chart = svg.Chart(title, "bias p", "coverage time (steps)")
    label = "biased walk" if sweep.r == 0 else f"biased walk, r={sweep.r:g}"
    chart.series.append(svg.Series(label, list(sweep.points)))
    if sweep.baseline is not None:
        chart.hlines.append(svg.HLine("random walk", sweep.baseline))
    return chart


def cmd_sweep_bias(args) -> int:
    grid = _grid(args)
    biases = _bias_range(args)
    sweep = sweep_bias(grid, biases, r=args.r, target_fraction=_target(args),
                       max_steps=args.max_steps, s=args.start,
                       d0=parse_direction(grid, args.direction) if args.direction else None,
                       workers=args.workers)
    write_csv(args.csv, ["p", "coverage_time", "baseline", "r"],
              ((p, t, sweep.baseline, sweep.r) for p, t in sweep.points))
    if args.svg:
        title = f"Coverage time vs bias, {grid} ({args.target:g}% target)"
        Path(args.svg).write_text(svg.render(_sweep_chart(sweep, title)))
    truncated = sweep.baseline is None or any(t is None for t in sweep.times)
    return EXIT_TRUNCATED if truncated else EXIT_OK


def cmd_crossover(args) -> int:
    grid = _grid(args)
    res = crossover_bias(grid, r=args.r, target_fraction=_target(args), max_steps=args.max_steps,
                         tolerance=args.tolerance, lo=args.lo, hi=args.hi, s=args.start)
    if args.csv:
        write_csv(args.csv, ["p", "coverage_time", "baseline"],
                  ((p, t, res.baseline) for p, t in res.iterates))
    if not res.found:
        print(f"crossover=none ({res.reason})")
        return EXIT_TRUNCATED
    print(f"crossover={res.p_star:.4f}" + (" ambiguous" if res.ambiguous else ""))
    return EXIT_TRUNCATED if res.ambiguous else EXIT_OK


def cmd_sweep_size(args) -> int:
    rows, status = [], EXIT_OK
    points = []
    for n in args.sizes:
        grid = TorusGrid.torus(n)
        res = crossover_bias(grid, r=args.r, target_fraction=_target(args),
                             max_steps=args.max_steps, tolerance=args.tolerance,
                             lo=args.lo, hi=args.hi)
        lo, hi = res.bracket or (None, None)
        rows.append((n, grid.N, res.baseline, res.p_star, lo, hi, res.ambiguous))
        points.append((float(n), res.p_star))
        print(f"{grid}: crossover={'none' if res.p_star is None else f'{res.p_star:.4f}'}",
              file=sys.stderr)
        if not res.found or res.ambiguous:
            status = EXIT_TRUNCATED
    write_csv(args.csv, ["size", "N", "baseline", "crossover", "bracket_lo", "bracket_hi",
                         "ambiguous"], rows)
    if args.svg:
        chart = svg.Chart(f"Cross-over bias vs network size (r={args.r:g})",
                          "side length", "cross-over bias")
        chart.series.append(svg.Series("cross-over bias", points))
        Path(args.svg).write_text(svg.render(chart))
    return status


def cmd_validate(args) -> int:
    if args.runs < 100:
        raise UsageError("--runs must be at least 100")
    grid, model = _grid(args), _model(args)
    rep = validate_against_macro(grid, model, args.runs, seed=args.seed, s=args.start,
                                 d0=_direction(args, grid, model),
                                 target_fraction=_target(args), bands=args.bands,
                                 max_steps=args.max_steps)
    write_csv(args.csv, ["step", "macro_start_mass", "empirical_returned", "returned_z",
                         "macro_C_k", "empirical_distinct", "distinct_z"],
              ((r.step, r.macro_start_mass, r.empirical_returned, r.returned_z, r.macro_C,
                r.empirical_distinct, r.distinct_z) for r in rep.rows))
    verdict = "pass" if rep.passed else "fail"
    print(f"validation={verdict} max_return_z={rep.max_returned_z:.3f} "
          f"max_distinct_z={rep.max_distinct_z:.3f} bands={rep.bands:g}")
    return EXIT_OK if rep.passed else EXIT_VALIDATION


def _bracket_flags(p) -> None:
    p.add_argument("--lo", type=float, default=0.0, help="lower end of the bias bracket")
    p.add_argument("--hi", type=float, default=0.95, help="upper end of the bias bracket")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="walkcover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, model=True):
        p.add_argument("--topology", choices=("torus8", "ring"), default="torus8")
        p.add_argument("--rows", type=int, default=5)
        p.add_argument("--cols", type=int, default=None,
                       help="columns (defaults to --rows for torus8; node count for ring)")
        p.add_argument("--start", type=int, default=None, help="start node (default: centre)")
        p.add_argument("--target", type=float, default=99.0, help="coverage target in percent")
        p.add_argument("--max-steps", type=int, default=None)
        p.add_argument("--csv", default=None, help="CSV output path (default stdout)")
        if model:
            p.add_argument("--model", choices=("uniform", "biased", "biased-random"),
                           default="uniform")
            p.add_argument("--p", type=float, default=None, help="bias")
            p.add_argument("--r", type=float, default=0.0, help="random-step probability")
            p.add_argument("--direction", default=None,
                           help="initial heading, name or index (default east)")

    p = sub.add_parser("coverage", help="coverage trace and time for one model")
    common(p)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("sweep-bias", help="coverage time over a range of biases")
    common(p, model=False)
    p.add_argument("--r", type=float, default=0.0)
    p.add_argument("--direction", default=None)
    p.add_argument("--bias-range", type=float, nargs=3, metavar=("START", "STOP", "STEP"),
                   default=(0.0, 0.95, 0.05))
    p.add_argument("--svg", default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_sweep_bias)

    p = sub.add_parser("crossover", help="bias where the biased walk meets the random walk")
    common(p, model=False)
    p.add_argument("--r", type=float, default=0.0)
    p.add_argument("--tolerance", type=float, default=0.005)
    _bracket_flags(p)
    p.set_defaults(func=cmd_crossover)

    p = sub.add_parser("sweep-size", help="cross-over bias across square torus sizes")
    p.add_argument("--sizes", type=int, nargs="+", default=list(range(5, 16)))
    p.add_argument("--r", type=float, default=0.0)
    p.add_argument("--target", type=float, default=99.0)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--tolerance", type=float, default=0.005)
    p.add_argument("--csv", default=None)
    p.add_argument("--svg", default=None)
    _bracket_flags(p)
    p.set_defaults(func=cmd_sweep_size)

    p = sub.add_parser("validate", help="compare the chain against Monte-Carlo runs")
    common(p)
    p.add_argument("--runs", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bands", type=float, default=4.0, help="allowed standard errors")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        print(f"walkcover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
