"""Command-line entry point: generate, stats, theory, fit, experiment.

Every command is deterministic given its flags; all randomness flows from
--seed. Exit codes: 0 success, 1 runtime or I/O failure, 2 usage errors.
Human-readable numbers use 6 significant digits; files carry full precision.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import stats
from .attractiveness import parse_kind
from .experiments import (
    EdgeListParseError,
    ExperimentConfig,
    compare_to_theory,
    ingest_edge_list,
    run_ensemble,
)
from .fitting import fit_exponential_decay, fit_power_law
from .generator import (
    ModelParams,
    generate,
    write_edge_list,
    write_qualities,
    write_trace,
)
from .quality import ParetoParams, SeedSpec
from .stats import DegreeHistogram, RecencyCurve
from .theory import (
    alpha_constant,
    concentration_bound,
    degree_validity_max,
    predicted_degree_density,
    predicted_eT,
)


def _int_list(text: str):
    return [int(x) for x in text.split(",") if x != ""]


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="recnet",
        description="Recency-based preferential-attachment graphs: "
        "simulate, analyze, and check against closed-form predictions.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="grow one graph and write it to disk")
    g.add_argument("--n", type=int, required=True, help="number of vertices")
    g.add_argument("--m", type=int, required=True, help="outdegree of each new vertex")
    g.add_argument("--N", type=int, required=True, dest="scale",
                   help="recency scale (window lifespan / decay time), in steps")
    g.add_argument("--gamma", type=float, required=True, help="quality tail exponent (> 1)")
    g.add_argument("--a", type=float, default=1.0, help="minimum quality (> 0)")
    g.add_argument("--kind", default="window",
                   help="window | exp | general:<a1><a2><a3>:<tau> | agepower:<exponent>")
    g.add_argument("--seed", type=int, required=True, help="master seed (decimal 64-bit)")
    g.add_argument("--stream", type=int, default=0, help="stream id (replica index)")
    g.add_argument("--out", required=True, help="edge-list output path")
    g.add_argument("--trace", action="store_true",
                   help="record and write the total-attractiveness trace")

    s = sub.add_parser("stats", help="degree/recency statistics of an edge list")
    s.add_argument("--in", dest="infile", required=True, help="edge-list path")
    s.add_argument("--qualities", default=None, help="qualities file (optional)")
    s.add_argument("--T-grid", dest="t_grid", type=_int_list, default=[],
                   help="comma-separated T values for e(T)")
    s.add_argument("--d-mode", choices=("total", "in"), default="total",
                   help="degree histogram mode")
    s.add_argument("--out-dir", default=".", help="where to write CSVs and summary")

    t = sub.add_parser("theory", help="closed-form predicted values")
    t.add_argument("--gamma", type=float, required=True)
    t.add_argument("--m", type=int, default=1)
    t.add_argument("--d", type=float, default=None, help="degree: print predicted density")
    t.add_argument("--kind", default="window", help="window | exp")
    t.add_argument("--N", type=int, dest="scale", default=None, help="recency scale")
    t.add_argument("--T", type=int, default=None, help="age gap: print predicted e(T)")
    t.add_argument("--n", type=int, default=None)
    t.add_argument("--alpha", type=float, default=None,
                   help="moment order override for 1 < gamma <= 2")
    t.add_argument("--validity", action="store_true",
                   help="print the max degree where the density formula applies")
    t.add_argument("--concentration", action="store_true",
                   help="print the count-concentration radius and probability bound")

    f = sub.add_parser("fit", help="estimate parameters from CSV tables")
    fsub = f.add_subparsers(dest="fit_mode", required=True)
    fp = fsub.add_parser("powerlaw", help="tail exponent from a d,count CSV")
    fp.add_argument("--in", dest="infile", required=True)
    fp.add_argument("--d-min", type=int, required=True, help="tail threshold (>= 2)")
    fd = fsub.add_parser("decay", help="decay scale from a T,e_of_T CSV")
    fd.add_argument("--in", dest="infile", required=True)
    fd.add_argument("--T-max", dest="t_max", type=int, default=None)

    e = sub.add_parser("experiment", help="run a replica ensemble from a config")
    e.add_argument("--config", default=None, help="JSON config path")
    e.add_argument("--n", type=int, default=None)
    e.add_argument("--m", type=int, default=None)
    e.add_argument("--N", type=int, dest="scale", default=None)
    e.add_argument("--gamma", type=float, default=None)
    e.add_argument("--a", type=float, default=None)
    e.add_argument("--kind", default=None)
    e.add_argument("--seed", type=int, default=None)
    e.add_argument("--trace", action="store_true", default=None,
                   help="record weight traces in every replica")
    e.add_argument("--replicas", type=int, default=None)
    e.add_argument("--T-grid", dest="t_grid", type=_int_list, default=None)
    e.add_argument("--d-range", dest="d_range", type=_int_list, default=None,
                   help="lo,hi degree range for the report")
    e.add_argument("--out-dir", default=None)
    e.add_argument("--parallelism", type=int, default=None,
                   help="worker processes (default: all available)")
    return top


def _cmd_generate(args) -> int:
    params = ModelParams(
        n=args.n,
        m=args.m,
        recency_scale=args.scale,
        pareto=ParetoParams(gamma=args.gamma, a=args.a),
        kind=parse_kind(args.kind, args.scale),
        seed=SeedSpec(args.seed, args.stream),
        record_weight_trace=args.trace,
    )
    started = time.perf_counter()
    graph = generate(params)
    elapsed = time.perf_counter() - started
    out = Path(args.out)
    write_edge_list(graph, out)
    write_qualities(graph, out.with_suffix(out.suffix + ".qualities"))
    if args.trace:
        write_trace(graph, out.with_suffix(out.suffix + ".trace"))
    print(f"wrote {out}: n={params.n} edges={graph.n_edges} ({elapsed:.6g}s)")
    return 0


def _cmd_stats(args) -> int:
    graph = ingest_edge_list(args.infile, args.qualities)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    hist = stats.degree_histogram(graph, mode=args.d_mode)
    (out / "degree_table.csv").write_text(stats.histogram_csv(hist))
    summary = {
        "n": graph.n_vertices,
        "edges": graph.n_edges,
        "d_mode": args.d_mode,
        "distinct_degrees": len(hist.counts),
        "max_degree": max(hist.counts),
        "has_qualities": graph.qualities is not None,
    }
    if args.t_grid:
        curve = stats.recency_curve(graph, args.t_grid)
        (out / "recency_table.csv").write_text(stats.curve_csv(curve))
        summary["e_of_T"] = {str(t): v for t, v in curve.points}
    (out / "summary.json").write_text(
        json.dumps(summary, sort_keys=True, indent=2) + "\n"
    )
    print(f"wrote {out / 'degree_table.csv'} (n={graph.n_vertices}, edges={graph.n_edges})")
    return 0


def _cmd_theory(args) -> int:
    outputs = []
    if args.d is not None:
        outputs.append(f"{predicted_degree_density(args.d, args.m, args.gamma):.6g}")
    if args.T is not None:
        if args.scale is None:
            raise ValueError("--T requires --N")
        kind = parse_kind(args.kind, args.scale)
        outputs.append(f"{predicted_eT(kind, args.T, args.scale):.6g}")
    if args.validity:
        if args.n is None or args.scale is None:
            raise ValueError("--validity requires --n and --N")
        kind = parse_kind(args.kind, args.scale)
        alpha = alpha_constant(args.gamma, args.alpha)
        outputs.append(
            f"{degree_validity_max(kind, args.n, args.scale, args.gamma, alpha):.6g}"
        )
    if args.concentration:
        if args.n is None or args.scale is None:
            raise ValueError("--concentration requires --n and --N")
        radius, prob = concentration_bound(args.n, args.scale)
        outputs.append(f"{radius:.6g} {prob:.6g}")
    if not outputs:
        raise ValueError("nothing requested: pass --d, --T, --validity or --concentration")
    print("\n".join(outputs))
    return 0


def _read_two_column_csv(path, header):
    rows = []
    with open(path) as f:
        first = f.readline().strip()
        if first != header:
            raise EdgeListParseError(f"{path}:1: expected header {header!r}, got {first!r}")
        for lineno, line in enumerate(f, start=2):
            text = line.strip()
            if not text:
                continue
            parts = text.split(",")
            if len(parts) != 2:
                raise EdgeListParseError(f"{path}:{lineno}: expected two columns")
            rows.append((parts[0], parts[1]))
    return rows


def _cmd_fit(args) -> int:
    if args.fit_mode == "powerlaw":
        rows = _read_two_column_csv(args.infile, "d,count")
        counts = {int(d): int(c) for d, c in rows}
        hist = DegreeHistogram(counts=counts, n=sum(counts.values()), mode="total")
        fit = fit_power_law(hist, d_min=args.d_min)
        print(fit.to_json())
    else:
        rows = _read_two_column_csv(args.infile, "T,e_of_T")
        curve = RecencyCurve(points=tuple((int(t), float(v)) for t, v in rows))
        t_max = args.t_max if args.t_max is not None else max(t for t, _ in curve.points)
        fit = fit_exponential_decay(curve, t_max)
        print(fit.to_json())
    return 0


def _cmd_experiment(args) -> int:
    base = {}
    if args.config is not None:
        with open(args.config) as f:
            base = json.load(f)
    overrides = {
        "n": args.n,
        "m": args.m,
        "N": args.scale,
        "gamma": args.gamma,
        "a": args.a,
        "kind": args.kind,
        "seed": args.seed,
        "record_weight_trace": args.trace,
        "replicas": args.replicas,
        "T_grid": args.t_grid,
        "d_range": args.d_range,
        "output_dir": args.out_dir,
        "parallelism": args.parallelism,
    }
    for key, value in overrides.items():
        if value is not None:
            base[key] = value
    config = ExperimentConfig.from_dict(base)
    started = time.perf_counter()
    report = run_ensemble(config)
    elapsed = time.perf_counter() - started
    flagged = [r for r in compare_to_theory(report) if r["in_validity"]]
    where = config.output_dir if config.output_dir is not None else "(not persisted)"
    print(
        f"ran {config.replicas} replicas of n={config.params.n} "
        f"kind={config.params.kind.label} in {elapsed:.6g}s; "
        f"{len(flagged)} in-validity comparison rows; report: {where}"
    )
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "generate": _cmd_generate,
        "stats": _cmd_stats,
        "theory": _cmd_theory,
        "fit": _cmd_fit,
        "experiment": _cmd_experiment,
    }
    try:
        return handlers[args.command](args)
    except ValueError as exc:
        if isinstance(exc, EdgeListParseError):
            print(f"error: {exc}", file=sys.stderr)
            return 1
        parser.exit(2, f"error: {exc}\n")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
