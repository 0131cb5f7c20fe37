"""Command-line interface: simulate, estimate, analyze, benchmark, serve.

Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric/domain error.
Every seeded command is byte-identical across runs and thread counts.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import serialize, svgplot
from ._fastpath import set_threads
from .bench import truncation_benchmark
from .clustering import DISTANCE_METHODS, LINKAGES, hclust_hurst, kmeans_hurst
from .covariance import cov_ghbmp, est_cov
from .errors import DataError, DomainError, ExprError, MfracError
from .estimation import EstimatorParams, estimate_hurst, lfd_from_hurst, smooth_estimates
from .expr import parse_hurst_expr, to_hurst_spec
from .geomstats import (
    LevelQuery,
    cross_count,
    cross_mean,
    cross_rate,
    exc_area,
    extremum,
    rs_index,
    sojourn,
    streak_stats,
)
from .hurst import constant
from .series import GridSpec, TimeSeries
from .simulate import (
    simulate_bbridge,
    simulate_bm,
    simulate_fbbridge,
    simulate_fbm,
    simulate_fgn,
    simulate_ghbmp,
)

PROCESS_KINDS = ("ghbmp", "bm", "bbridge", "fbm", "fbbridge", "fgn")


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _hurst_spec_from_args(args) -> tuple:
    """(HurstSpec, description) from --hurst / --hurst-const flags."""
    if getattr(args, "hurst", None) is not None:
        expr = parse_hurst_expr(args.hurst)
        return to_hurst_spec(expr), args.hurst
    if getattr(args, "hurst_const", None) is not None:
        return constant(args.hurst_const), str(args.hurst_const)
    raise DomainError("a Hurst function is required (--hurst or --hurst-const)")


def _run_simulation(args) -> TimeSeries:
    kind = args.kind
    if kind == "fgn":
        x = simulate_fgn(args.points, args.hurst_const if args.hurst_const is not None else 0.5,
                         seed=args.seed)
        return TimeSeries(times=np.arange(len(x), dtype=float), values=x)
    grid = GridSpec.uniform(args.start, args.end, args.points)
    if kind == "ghbmp":
        spec, _ = _hurst_spec_from_args(args)
        return simulate_ghbmp(grid, spec, J=args.trunc, seed=args.seed)
    if kind == "bm":
        return simulate_bm(grid, seed=args.seed)
    if kind == "bbridge":
        return simulate_bbridge(grid, a=args.terminal, seed=args.seed)
    if kind == "fbm":
        if args.hurst_const is None:
            raise DomainError("fbm needs --hurst-const")
        return simulate_fbm(grid, args.hurst_const, seed=args.seed)
    if kind == "fbbridge":
        if args.hurst_const is None:
            raise DomainError("fbbridge needs --hurst-const")
        return simulate_fbbridge(grid, args.hurst_const, a=args.terminal, seed=args.seed)
    raise DomainError(f"unknown process kind {kind!r}")


def cmd_simulate(args) -> int:
    X = _run_simulation(args)
    if args.format == "csv":
        _write(serialize.series_to_csv(X), args.output)
    elif args.format == "json":
        meta = {"kind": args.kind, "seed": args.seed, "J": args.trunc}
        _write(serialize.series_to_json(X, meta=meta) + "\n", args.output)
    else:
        svg = svgplot.line_chart([(X.times, X.values, args.kind)], title=f"{args.kind} path")
        _write(svg, args.output)
    return 0


def cmd_estimate(args) -> int:
    X = serialize.series_from_csv(_read(args.input))
    params = EstimatorParams(N=args.N, Q=args.Q, L=args.L)
    est = smooth_estimates(estimate_hurst(X, params), span=args.span)
    if args.format == "csv":
        _write(serialize.estimate_to_csv(est), args.output)
    elif args.format == "json":
        meta = {"N": args.N, "Q": args.Q, "L": args.L, "span": args.span,
                "degenerate_count": int(est.degenerate.sum())}
        _write(serialize.estimate_to_json(est, meta=meta) + "\n", args.output)
    else:
        lfd = lfd_from_hurst(est)
        curves = [
            (X.times, X.values, "series"),
            (est.interval_starts, est.raw, "hurst raw"),
            (est.interval_starts, est.smoothed, "hurst smoothed"),
            (lfd.interval_starts, lfd.smoothed, "lfd smoothed"),
        ]
        _write(svgplot.line_chart(curves, title="series with roughness estimates"), args.output)
    return 0


def cmd_covariance(args) -> int:
    if args.mode == "theoretical":
        spec, _ = _hurst_spec_from_args(args)
        grid = np.linspace(0.0, 1.0, args.points)
        C = cov_ghbmp(grid, spec, J=args.trunc, theta=args.theta)
    else:
        paths = _expand_inputs(args.inputs)
        if not paths:
            raise DataError("no input CSV files found")
        series = [serialize.series_from_csv(_read(p)) for p in paths]
        C = est_cov(series, theta=args.theta)
    if args.format == "csv":
        _write(serialize.cov_to_csv(C), args.output)
    elif args.format == "json":
        _write(serialize.cov_to_json(C) + "\n", args.output)
    else:
        _write(svgplot.heatmap(C.grid, C.entries, title="covariance"), args.output)
    return 0


def _expand_inputs(inputs: list[str]) -> list[str]:
    paths: list[str] = []
    for item in inputs:
        p = Path(item)
        if p.is_dir():
            paths.extend(sorted(str(f) for f in p.glob("*.csv")))
        else:
            paths.append(item)
    return paths


def cmd_cluster(args) -> int:
    paths = _expand_inputs(args.inputs)
    if len(paths) < 2:
        raise DataError("need at least 2 realizations to cluster")
    series = [serialize.series_from_csv(_read(p)) for p in paths]
    params = EstimatorParams(N=args.N, Q=args.Q, L=args.L)
    if args.algo == "hclust":
        result = hclust_hurst(series, k=args.k, h=args.height, dist_method=args.dist,
                              linkage=args.linkage, params=params)
    else:
        if args.k is None:
            raise DomainError("kmeans needs -k")
        result = kmeans_hurst(series, k=args.k, iter_max=args.iter_max, nstart=args.nstart,
                              seed=args.seed, params=params)
    if args.format == "csv":
        _write(serialize.cluster_to_csv(result), args.output)
    else:
        _write(serialize.cluster_to_json(result, meta={"inputs": paths}) + "\n", args.output)
    return 0


def cmd_stats(args) -> int:
    text = _read(args.input)
    try:
        X = serialize.series_from_csv(text)
    except DataError:
        # single-column price vectors are accepted too (t = sample index)
        prices = serialize.column_from_csv(text)
        X = TimeSeries(times=np.arange(len(prices), dtype=float), values=prices)
    sub = tuple(args.sub) if args.sub else None
    q = LevelQuery(A=args.level, direction=args.direction, N=args.points, subI=sub)
    wanted = args.stat
    results: dict = {}
    if wanted in ("sojourn", "all"):
        results["sojourn"] = sojourn(X, q)
    if wanted in ("exc-area", "all"):
        results["exc_area"] = exc_area(X, q)
    if wanted in ("rsi", "all"):
        rsi = rs_index(X.values, period=args.period)
        results["rsi"] = [None if np.isnan(v) else float(v) for v in rsi]
    if wanted in ("crossings", "all"):
        results["cross_count"] = cross_count(X, args.level)
        results["cross_rate"] = cross_rate(X, args.level)
        results["cross_mean"] = cross_mean(X)
    if wanted in ("streaks", "all"):
        results["streaks"] = streak_stats(X, q)
    if wanted in ("extrema", "all"):
        results["max"] = extremum(X, "max")
        results["min"] = extremum(X, "min")
    doc = {"level": args.level, "direction": args.direction, "results": results}
    _write(json.dumps(doc) + "\n", args.output)
    return 0


def cmd_bench_trunc(args) -> int:
    if args.j_min < 3 or args.j_max > 20 or args.j_min > args.j_max:
        raise DomainError("J range must satisfy 3 <= j-min <= j-max <= 20")
    expr = parse_hurst_expr(args.hurst)
    lines = ["J,max_err,mean_err,mse,mean_elapsed_s"]
    for J in range(args.j_min, args.j_max + 1):
        row = truncation_benchmark(expr, J, reps=args.reps, seed=args.seed,
                                   Q=args.Q, L=args.L)
        elapsed = 0.0 if args.no_timing else row.mean_elapsed_s
        lines.append(
            f"{J},{serialize.fmt(row.max_err)},{serialize.fmt(row.mean_err)},"
            f"{serialize.fmt(row.mse)},{serialize.fmt(elapsed)}"
        )
    _write("\n".join(lines) + "\n", args.output)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    app = create_app(points_cap=args.points_cap, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mfrac",
        description="Simulate and analyze multifractional Gaussian time series.",
    )
    parser.add_argument("--threads", type=int, default=None,
                        help="cap worker threads (default: MFRAC_THREADS or all)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simulate a process realization")
    p.add_argument("kind", choices=PROCESS_KINDS)
    p.add_argument("--hurst", help="Hurst expression in t, e.g. '0.4 - 0.25*sin(6*pi*t)'")
    p.add_argument("--hurst-const", type=float, help="constant Hurst value (fbm/fbbridge/fgn)")
    p.add_argument("--points", type=int, default=1025)
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--end", type=float, default=1.0)
    p.add_argument("--terminal", type=float, default=0.0, help="bridge terminal value")
    p.add_argument("--trunc", "-J", type=int, default=15, dest="trunc",
                   help="series truncation level (ghbmp)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("estimate", help="estimate Hurst function from a t,x CSV")
    p.add_argument("input")
    p.add_argument("-N", type=int, default=100)
    p.add_argument("-Q", type=int, default=2)
    p.add_argument("-L", type=int, default=2)
    p.add_argument("--span", type=float, default=0.75)
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("covariance", help="theoretical or empirical covariance matrix")
    p.add_argument("mode", choices=("theoretical", "empirical"))
    p.add_argument("inputs", nargs="*", help="CSV files or directories (empirical)")
    p.add_argument("--hurst", help="Hurst expression (theoretical)")
    p.add_argument("--hurst-const", type=float)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--trunc", "-J", type=int, default=8, dest="trunc")
    p.add_argument("--theta", type=float, default=None, help="Gaussian smoothing bandwidth")
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_covariance)

    p = sub.add_parser("cluster", help="cluster realizations by smoothed Hurst estimates")
    p.add_argument("algo", choices=("hclust", "kmeans"))
    p.add_argument("inputs", nargs="+", help="CSV files or directories")
    p.add_argument("-k", type=int, default=None)
    p.add_argument("--height", type=float, default=None, help="dendrogram cut height (hclust)")
    p.add_argument("--dist", default="euclidean",
                   help=f"distance method, one of {', '.join(DISTANCE_METHODS)}")
    p.add_argument("--linkage", default="complete", choices=LINKAGES)
    p.add_argument("--iter-max", type=int, default=10)
    p.add_argument("--nstart", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-N", type=int, default=100)
    p.add_argument("-Q", type=int, default=2)
    p.add_argument("-L", type=int, default=2)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("stats", help="geometric/level statistics of one series")
    p.add_argument("input")
    p.add_argument("--stat", default="all",
                   choices=("all", "sojourn", "exc-area", "rsi", "crossings", "streaks", "extrema"))
    p.add_argument("--level", "-A", type=float, default=0.0)
    p.add_argument("--direction", choices=("greater", "lower"), default="greater")
    p.add_argument("--points", type=int, default=10000, help="resampling subinterval count")
    p.add_argument("--sub", type=float, nargs=2, default=None, metavar=("LO", "HI"))
    p.add_argument("--period", type=int, default=14, help="RSI look-back period")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench-trunc", help="accuracy/runtime study over truncation levels")
    p.add_argument("--j-min", type=int, default=5)
    p.add_argument("--j-max", type=int, default=15)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--hurst", default="0.4 - 0.25*sin(6*pi*t)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-N", type=int, default=100)
    p.add_argument("-Q", type=int, default=2)
    p.add_argument("-L", type=int, default=2)
    p.add_argument("--no-timing", action="store_true",
                   help="write 0 for elapsed time (byte-reproducible output)")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_bench_trunc)

    p = sub.add_parser("serve", help="start the JSON API / explorer UI server")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)
    p.add_argument("--points-cap", type=int, default=2**17 + 1)
    p.add_argument("--ui-dir", default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    threads = args.threads
    if threads is None and os.environ.get("MFRAC_THREADS"):
        try:
            threads = int(os.environ["MFRAC_THREADS"])
        except ValueError:
            print("mfrac: ignoring non-integer MFRAC_THREADS", file=sys.stderr)
    set_threads(threads)
    try:
        return args.func(args)
    except (DataError, OSError) as exc:
        print(f"mfrac: {exc}", file=sys.stderr)
        return 3
    except (DomainError, ExprError, MfracError) as exc:
        print(f"mfrac: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
