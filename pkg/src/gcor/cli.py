"""Command-line interface.

Subcommands: compute (scalar measures), grid (dependence surfaces as
CSV/JSON/SVG), tail (tail curves and classification), summary (integrated
measures), simulate (copula draws).  Input is a headered CSV; the two
analysed columns are selected with --x/--y and rows with missing or
non-numeric cells in either column are dropped pairwise.

Exit codes: 0 success, 2 I/O error, 3 parse error, 4 empty sample,
5 empty grid; other argument errors return 1.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np
from scipy.stats import expon, norm

from . import __version__
from .copulas import FAMILIES, CopulaSpec, sample_copula
from .engine import MeasureResult, gcor
from .exceptions import EmptyGrid, EmptySample, GcorError, ParseError
from .functionals import FunctionalSpec
from .grids import DEFAULT_TRIM, GridSpec
from .local import blomqvist_beta, qcor, qmcor, tcor
from .sample import BivariateSample, make_sample
from .serialize import (
    json_dumps,
    pairs_to_csv,
    read_xy_csv,
    surface_to_csv,
    surface_to_json,
    tail_curve_to_csv,
)
from .summary import scor
from .svgplot import heatmap_svg
from .tail import tail_curve, tail_estimate

EXIT_IO_ERROR = 2
EXIT_PARSE_ERROR = 3
EXIT_EMPTY_SAMPLE = 4
EXIT_EMPTY_GRID = 5

MEASURES = ("mcor", "ecor", "qcor", "tcor", "qmcor", "blomqvist")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcor",
        description="Generalised, local, distributional, tail and summary correlations.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", "-i", required=True, help="input CSV with a header row")
            p.add_argument("--x", required=True, metavar="COL", help="column used as X")
            p.add_argument("--y", required=True, metavar="COL", help="column used as Y")
        p.add_argument("--output", "-o", help="output file (default: stdout)")

    p = sub.add_parser("compute", help="one scalar dependence measure")
    add_io(p)
    p.add_argument("--measure", required=True, choices=MEASURES)
    p.add_argument("--alpha", type=float, default=0.5, help="x quantile level")
    p.add_argument("--beta", type=float, default=0.5, help="y quantile level")
    p.add_argument("--tau", type=float, default=0.5, help="x expectile level")
    p.add_argument("--eta", type=float, default=0.5, help="y expectile level")
    p.add_argument("--a", type=float, help="x threshold (tcor)")
    p.add_argument("--b", type=float, help="y threshold (tcor)")

    p = sub.add_parser("grid", help="distributional dependence surface")
    add_io(p)
    p.add_argument("--mode", choices=("qf", "cdf"), default="qf")
    p.add_argument("--value", choices=("cor", "cov"), default="cor")
    p.add_argument("--levels", help="qf grid: 'start:stop:step' or comma list (default 0.01:0.99:0.01)")
    p.add_argument("--xgrid", help="cdf mode: explicit comma-separated x thresholds")
    p.add_argument("--ygrid", help="cdf mode: explicit comma-separated y thresholds")
    p.add_argument("--trim", default=None, help="cdf mode: 'lo,hi' quantile trim (default 0.025,0.975)")
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")

    p = sub.add_parser("tail", help="tail correlation curve")
    add_io(p)
    p.add_argument("--side", choices=("lower", "upper"), default="lower")
    p.add_argument("--levels", help="comma-separated levels (defaults per side)")
    p.add_argument("--classify", action="store_true", help="emit the classification record instead of the curve")

    p = sub.add_parser("summary", help="integrated (summary) correlation")
    add_io(p)
    p.add_argument("--domain", choices=("cdf", "qf"), default="cdf")
    p.add_argument("--rect", help="'lox,hix,loy,hiy' integration rectangle ('inf' allowed, cdf only)")

    p = sub.add_parser("simulate", help="draw pairs from a copula")
    add_io(p, needs_input=False)
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--r", type=float, help="gaussian/student_t correlation parameter")
    p.add_argument("--nu", type=float, help="student_t degrees of freedom")
    p.add_argument("--theta", type=float, help="clayton/gumbel parameter")
    p.add_argument("--n", type=int, required=True, help="number of draws")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--marginal",
        choices=("uniform", "normal", "exponential"),
        help="also emit x,y with this marginal applied to u,v",
    )
    return parser


def _parse_floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _parse_levels(text: str) -> np.ndarray:
    if ":" in text:
        start, stop, step = (float(t) for t in text.split(":"))
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return np.array([start + k * step for k in range(count)])
    return np.array(_parse_floats(text))


def _load_sample(args) -> BivariateSample:
    xs, ys = read_xy_csv(args.input, args.x, args.y)
    return make_sample(xs, ys)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _record(measure: str, params: dict, result: MeasureResult, n: int, correlation=None) -> dict:
    return {
        "measure": measure,
        "params": params,
        "covariance": result.covariance,
        "lower_bound": result.bounds.lower,
        "upper_bound": result.bounds.upper,
        "correlation": result.correlation if correlation is None else correlation,
        "n": n,
        "degenerate": result.degenerate,
    }


def run_compute(args) -> str:
    sample = _load_sample(args)
    m = args.measure
    if m == "mcor":
        result = gcor(sample, FunctionalSpec.mean(), FunctionalSpec.mean())
        rec = _record("mcor", {}, result, sample.n)
    elif m == "ecor":
        result = gcor(sample, FunctionalSpec.expectile(args.tau), FunctionalSpec.expectile(args.eta))
        rec = _record("ecor", {"tau": args.tau, "eta": args.eta}, result, sample.n)
    elif m == "qcor":
        result = qcor(sample, args.alpha, args.beta)
        rec = _record("qcor", {"alpha": args.alpha, "beta": args.beta}, result, sample.n)
    elif m == "tcor":
        if args.a is None or args.b is None:
            raise ParseError("tcor needs --a and --b")
        result = tcor(sample, args.a, args.b)
        rec = _record("tcor", {"a": args.a, "b": args.b}, result, sample.n)
    elif m == "qmcor":
        result = qmcor(sample, args.alpha)
        rec = _record("qmcor", {"alpha": args.alpha}, result, sample.n)
    else:  # blomqvist: the 4F-1 value, reported alongside the median-quantile measure
        result = qcor(sample, 0.5, 0.5)
        rec = _record("blomqvist", {}, result, sample.n, correlation=blomqvist_beta(sample))
    return json_dumps(rec) + "\n"


def run_grid(args) -> str:
    sample = _load_sample(args)
    if args.mode == "qf":
        levels = _parse_levels(args.levels) if args.levels else None
        spec = GridSpec.quantile(levels)
    elif args.xgrid or args.ygrid:
        if not (args.xgrid and args.ygrid):
            raise ParseError("cdf mode with explicit grids needs both --xgrid and --ygrid")
        xg, yg = _parse_floats(args.xgrid), _parse_floats(args.ygrid)
        if not xg or not yg:
            raise EmptyGrid("explicit threshold grid is empty")
        spec = GridSpec.threshold(xg, yg)
    else:
        trim = tuple(_parse_floats(args.trim)) if args.trim else DEFAULT_TRIM
        spec = GridSpec.data_breakpoints(trim)
    surface = spec.build(sample, value=args.value)
    if args.format == "csv":
        return surface_to_csv(surface)
    if args.format == "json":
        return surface_to_json(surface) + "\n"
    return heatmap_svg(surface)


def run_tail(args) -> str:
    sample = _load_sample(args)
    levels = _parse_levels(args.levels) if args.levels else None
    curve = tail_curve(sample, args.side, levels)
    if args.classify:
        cls = tail_estimate(curve)
        return (
            json_dumps(
                {
                    "side": curve.side,
                    "label": cls.label,
                    "estimate": cls.estimate,
                    "level": cls.level,
                    "n": curve.n,
                }
            )
            + "\n"
        )
    return tail_curve_to_csv(curve)


def run_summary(args) -> str:
    sample = _load_sample(args)
    rect = tuple(float(t) for t in args.rect.split(",")) if args.rect else None
    result = scor(sample, args.domain, rect)
    return (
        json_dumps(
            {
                "measure": "scor",
                "params": {"domain": args.domain, "rect": list(rect) if rect else None},
                "covariance": result.covariance,
                "lower_bound": result.bounds.lower,
                "upper_bound": result.bounds.upper,
                "correlation": result.correlation,
                "n": sample.n,
                "degenerate": result.degenerate,
            }
        )
        + "\n"
    )


def run_simulate(args) -> str:
    spec = CopulaSpec(args.family, r=args.r, nu=args.nu, theta=args.theta)
    sample = sample_copula(spec, args.n, args.seed)
    cols = {"u": sample.xs, "v": sample.ys}
    if args.marginal == "uniform":
        cols["x"], cols["y"] = sample.xs, sample.ys
    elif args.marginal == "normal":
        cols["x"], cols["y"] = norm.ppf(sample.xs), norm.ppf(sample.ys)
    elif args.marginal == "exponential":
        cols["x"], cols["y"] = expon.ppf(sample.xs), expon.ppf(sample.ys)
    return pairs_to_csv(cols)


_RUNNERS = {
    "compute": run_compute,
    "grid": run_grid,
    "tail": run_tail,
    "summary": run_summary,
    "simulate": run_simulate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = _RUNNERS[args.command](args)
    except OSError as exc:
        print(f"gcor: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR
    except ParseError as exc:
        print(f"gcor: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except EmptySample as exc:
        print(f"gcor: empty sample: {exc}", file=sys.stderr)
        return EXIT_EMPTY_SAMPLE
    except EmptyGrid as exc:
        print(f"gcor: empty grid: {exc}", file=sys.stderr)
        return EXIT_EMPTY_GRID
    except GcorError as exc:
        print(f"gcor: {exc}", file=sys.stderr)
        return 1
    try:
        _emit(text, args.output)
    except OSError as exc:
        print(f"gcor: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR
    return 0


if __name__ == "__main__":
    sys.exit(main())
