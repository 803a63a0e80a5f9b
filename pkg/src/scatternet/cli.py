"""Command-line front end: batch generation, validation and benchmarking.

Exit codes are a total function of outcome class: 0 success, 2 invalid
configuration or plan, 3 I/O or parse error, 4 statistical validation
failure.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from .automatic import deploy_automatic
from .core import ConfigError, NetworkConfig, validate_config
from .fileio import (
    FormatError,
    automatic_metadata,
    deployment_from_files,
    load_plan,
    planned_metadata,
    write_metadata,
    write_plot_data,
    write_points,
    write_report,
)
from .planned import check_non_overlap, deploy_planned
from .rng import RandomStream
from .stats import DEFAULT_CHI2_ALPHA, DEFAULT_KS_ALPHA, check_membership, count_per_sector, evaluate_deployment

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_VALIDATION = 4


def _err(message: str) -> None:
    print(message, file=sys.stderr)


def _run_stem(out_dir: Path, run: int) -> Path:
    return out_dir / f"run_{run:03d}"


def _write_run(out_dir: Path, run: int, deployment, meta: dict, fmt: str, plot_data: bool) -> Path:
    stem = _run_stem(out_dir, run)
    points_path = stem.with_suffix(f".{fmt}")
    write_points(points_path, deployment, fmt=fmt)
    write_metadata(stem.with_suffix(".meta.json"), meta)
    if plot_data:
        write_plot_data(stem.with_suffix(".xy"), stem.with_suffix(".rings"), deployment)
    return points_path


def cmd_deploy(args) -> int:
    if args.runs < 1:
        _err(f"invalid configuration: runs must be at least 1, got {args.runs}")
        return EXIT_CONFIG
    try:
        config = validate_config(
            NetworkConfig(radius=args.size, max_layers=args.max_layers, nodes=args.nodes, seed=args.seed)
        )
    except ConfigError as exc:
        for violation in exc.violations:
            _err(f"invalid configuration: {violation}")
        return EXIT_CONFIG
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for run in range(args.runs):
            stream = RandomStream(config.seed, run)
            deployment = deploy_automatic(config, stream)
            meta = automatic_metadata(deployment, run)
            points_path = _write_run(out_dir, run, deployment, meta, args.format, args.plot_data)
            print(
                f"run {run:03d}: layers={meta['n_L']} inner={meta['n_in']} "
                f"outer={meta['n_out']} points={len(deployment)} -> {points_path}"
            )
    except OSError as exc:
        _err(f"I/O error: {exc}")
        return EXIT_IO
    return EXIT_OK


def cmd_plan(args) -> int:
    if args.runs < 1:
        _err(f"invalid configuration: runs must be at least 1, got {args.runs}")
        return EXIT_CONFIG
    try:
        plan = load_plan(args.plan)
    except FileNotFoundError as exc:
        _err(f"I/O error: {exc}")
        return EXIT_IO
    except FormatError as exc:
        _err(f"invalid plan: {exc}")
        return EXIT_CONFIG
    check = check_non_overlap(plan.sectors)
    if not check.ok:
        _err(f"invalid plan: {check.message}")
        return EXIT_CONFIG
    try:
        if not 0 <= args.seed < 2**64:
            raise ConfigError([f"seed must fit in an unsigned 64-bit integer, got {args.seed}"])
    except ConfigError as exc:
        _err(f"invalid configuration: {exc}")
        return EXIT_CONFIG
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for run in range(args.runs):
            stream = RandomStream(args.seed, run)
            deployment = deploy_planned(plan, stream)
            meta = planned_metadata(deployment, run, args.seed)
            points_path = _write_run(out_dir, run, deployment, meta, args.format, args.plot_data)
            print(f"run {run:03d}: sectors={len(plan.sectors)} points={len(deployment)} -> {points_path}")
    except OSError as exc:
        _err(f"I/O error: {exc}")
        return EXIT_IO
    return EXIT_OK


def _expected_counts(deployment) -> dict:
    if deployment.config is not None:
        expected = {1: deployment.inner_count}
        for layer in range(2, deployment.layer_set.layer_count + 1):
            expected[layer] = deployment.outer_count
        return expected
    return {i: sec.count for i, sec in enumerate(deployment.plan.sectors, start=1)}


def _validate_one(points_path: Path, ks_alpha: float) -> int:
    meta_path = points_path.with_suffix("").with_suffix(".meta.json")
    if not meta_path.exists():
        _err(f"{points_path}: metadata file {meta_path} not found")
        return EXIT_IO
    if not points_path.exists():
        _err(f"{points_path}: points file not found")
        return EXIT_IO
    try:
        deployment = deployment_from_files(points_path, meta_path)
    except (FormatError, OSError, ValueError) as exc:
        _err(f"{points_path}: {exc}")
        return EXIT_IO

    code = EXIT_OK
    expected = _expected_counts(deployment)
    actual = dict(count_per_sector(deployment))
    if actual != expected:
        for index in sorted(set(expected) | set(actual)):
            if expected.get(index) != actual.get(index):
                _err(
                    f"{points_path}: sector {index} has {actual.get(index, 0)} points, "
                    f"expected {expected.get(index, 0)}"
                )
        code = EXIT_VALIDATION

    outside = check_membership(deployment)
    if outside.size:
        for idx in outside[:10]:
            _err(f"{points_path}: point {int(idx)} lies outside sector {int(deployment.sector[idx])}")
        if outside.size > 10:
            _err(f"{points_path}: ... and {outside.size - 10} more membership violations")
        code = EXIT_VALIDATION

    report = evaluate_deployment(deployment, ks_alpha=ks_alpha, chi2_alpha=DEFAULT_CHI2_ALPHA)
    write_report(points_path.with_suffix("").with_suffix(".report.json"), report)
    for test, sector, result in report.failures():
        where = f"sector {sector}" if sector is not None else "all points"
        _err(
            f"{points_path}: {test} failed for {where}: "
            f"statistic {result.statistic:.6g} >= threshold {result.threshold:.6g}"
        )
        code = EXIT_VALIDATION
    if code == EXIT_OK:
        print(f"{points_path}: ok ({len(deployment)} points, {len(report.per_sector)} sectors)")
    return code


def cmd_validate(args) -> int:
    codes = []
    for name in args.files:
        try:
            codes.append(_validate_one(Path(name), args.alpha))
        except OSError as exc:
            _err(f"{name}: I/O error: {exc}")
            codes.append(EXIT_IO)
    if EXIT_IO in codes:
        return EXIT_IO
    if EXIT_VALIDATION in codes:
        return EXIT_VALIDATION
    return EXIT_OK


def time_forced_run(radius: float, max_layers: int, nodes: int, seed: int, repeats: int = 3) -> float:
    """Best-of-``repeats`` wall time of one worst-case run (layer count pinned
    to its maximum)."""
    config = validate_config(NetworkConfig(radius=radius, max_layers=max_layers, nodes=nodes, seed=seed))
    best = float("inf")
    for attempt in range(repeats):
        stream = RandomStream(seed, attempt)
        start = time.perf_counter()
        deploy_automatic(config, stream, force_layer_count=max_layers)
        best = min(best, time.perf_counter() - start)
    return best


def fit_exponent(sizes, times) -> float:
    """Slope of log(time) against log(size): the apparent scaling exponent."""
    return float(np.polyfit(np.log(np.asarray(sizes, float)), np.log(np.asarray(times, float)), 1)[0])


def cmd_bench(args) -> int:
    try:
        ns_ladder = [int(v) for v in args.ns_ladder.split(",") if v]
        nl_ladder = [int(v) for v in args.nl_ladder.split(",") if v]
    except ValueError:
        _err("invalid configuration: ladders must be comma-separated integers")
        return EXIT_CONFIG
    if not ns_ladder or not nl_ladder or args.repeats < 1:
        _err("invalid configuration: ladders must be non-empty and repeats at least 1")
        return EXIT_CONFIG
    if any(n < args.bench_layers for n in ns_ladder) or any(args.nodes < nl for nl in nl_ladder):
        _err("invalid configuration: every swept node count must be >= the layer bound it runs with")
        return EXIT_CONFIG
    out_dir = Path(args.out_dir)
    rows = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        ns_times = []
        for nodes in ns_ladder:
            seconds = time_forced_run(args.size, args.bench_layers, nodes, args.seed, args.repeats)
            ns_times.append(seconds)
            rows.append((nodes, args.bench_layers, seconds))
            print(f"n_S={nodes} n_Lmax={args.bench_layers} seconds={seconds:.6f}")
        nl_times = []
        for layers in nl_ladder:
            seconds = time_forced_run(args.size, layers, args.nodes, args.seed, args.repeats)
            nl_times.append(seconds)
            rows.append((args.nodes, layers, seconds))
            print(f"n_S={args.nodes} n_Lmax={layers} seconds={seconds:.6f}")
        table = out_dir / "bench.csv"
        lines = ["n_S,n_Lmax,seconds"]
        lines.extend(f"{n},{nl},{repr(t)}" for n, nl, t in rows)
        table.write_text("\n".join(lines) + "\n")
        summary = []
        if len(ns_ladder) >= 2:
            exponent = fit_exponent(ns_ladder, ns_times)
            summary.append(f"node-count sweep: fitted exponent {exponent:.3f}")
        if len(nl_ladder) >= 2:
            exponent = fit_exponent(nl_ladder, nl_times)
            summary.append(f"layer-bound sweep: fitted exponent {exponent:.3f}")
        for line in summary:
            print(line)
        print(f"wrote {table}")
    except OSError as exc:
        _err(f"I/O error: {exc}")
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scatternet",
        description="Seeded generator of inhomogeneous spatial node deployments over a disk.",
    )
    sub = parser.add_subparsers(dest="command")

    deploy = sub.add_parser("deploy", help="generate automatic layered deployments")
    deploy.add_argument("--size", type=float, required=True, help="network radius")
    deploy.add_argument("--max-layers", type=int, required=True, help="upper bound on the sampled layer count")
    deploy.add_argument("--nodes", type=int, required=True, help="total node count")
    deploy.add_argument("--seed", type=int, default=0, help="unsigned 64-bit RNG seed")
    deploy.add_argument("--runs", type=int, default=1, help="number of independent runs")
    deploy.add_argument("--out-dir", default=".", help="output directory")
    deploy.add_argument("--format", choices=("csv", "json"), default="csv", help="points file format")
    deploy.add_argument("--plot-data", action="store_true", help="also write scatter and ring-boundary files")
    deploy.set_defaults(func=cmd_deploy)

    plan = sub.add_parser("plan", help="generate deployments from a sector plan file")
    plan.add_argument("--plan", required=True, help="path to a JSON plan (array of sector objects)")
    plan.add_argument("--seed", type=int, default=0, help="unsigned 64-bit RNG seed")
    plan.add_argument("--runs", type=int, default=1, help="number of independent runs")
    plan.add_argument("--out-dir", default=".", help="output directory")
    plan.add_argument("--format", choices=("csv", "json"), default="csv", help="points file format")
    plan.add_argument("--plot-data", action="store_true", help="also write scatter files")
    plan.set_defaults(func=cmd_plan)

    validate = sub.add_parser("validate", help="statistically validate generated runs")
    validate.add_argument("files", nargs="+", help="points files (each needs its .meta.json sibling)")
    validate.add_argument(
        "--alpha", type=float, default=DEFAULT_KS_ALPHA,
        help=f"significance level for the radial KS test (default {DEFAULT_KS_ALPHA}; "
        f"chi-square tests stay at {DEFAULT_CHI2_ALPHA})",
    )
    validate.set_defaults(func=cmd_validate)

    bench = sub.add_parser("bench", help="time worst-case generation over parameter ladders")
    bench.add_argument("--size", type=float, default=1.0, help="network radius")
    bench.add_argument("--seed", type=int, default=0, help="unsigned 64-bit RNG seed")
    bench.add_argument("--out-dir", default=".", help="where to write bench.csv")
    bench.add_argument("--ns-ladder", default="10000,100000,1000000",
                       help="comma-separated node counts for the node sweep")
    bench.add_argument("--bench-layers", type=int, default=10,
                       help="layer bound used during the node sweep")
    bench.add_argument("--nl-ladder", default="10,100,1000,10000",
                       help="comma-separated layer bounds for the layer sweep")
    bench.add_argument("--nodes", type=int, default=100000,
                       help="fixed node count used during the layer sweep")
    bench.add_argument("--repeats", type=int, default=3, help="timing repeats (best is kept)")
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return EXIT_CONFIG
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
