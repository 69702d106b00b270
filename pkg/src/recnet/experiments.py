"""Ensemble orchestration: replicas, aggregation, reports, and ingestion.

An experiment runs R independent replicas of one parameterization (replica r
uses stream id r under the master seed), reduces per-replica statistics into
ensemble means, compares them against the closed-form targets, and persists a
reproducible report: byte-identical for identical configs. Edge lists written
by the generator (or any file in the same format) can be ingested back for
analysis.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import stats, theory
from .attractiveness import parse_kind
from .fitting import fit_exponential_decay, fit_power_law
from .generator import FORMAT_NAME, GrownGraph, ModelParams, generate
from .quality import ParetoParams, SeedSpec, pareto_mean
from .stats import DegreeHistogram, RecencyCurve


class EdgeListParseError(ValueError):
    """Raised for malformed edge-list input; message carries file and line."""


@dataclass(frozen=True)
class ExperimentConfig:
    """One ensemble: model parameters plus orchestration knobs.

    ``params.seed`` acts as the master seed; replica r runs with stream id r.
    ``parallelism`` of None means one worker per available processor.
    """

    params: ModelParams
    replicas: int
    t_grid: tuple
    d_range: tuple
    output_dir: Optional[str] = None
    parallelism: Optional[int] = None

    def __post_init__(self):
        if self.replicas < 1:
            raise ValueError("replicas must be >= 1")
        lo, hi = self.d_range
        if not (1 <= lo <= hi):
            raise ValueError(f"bad d_range {self.d_range}")
        grid = tuple(int(t) for t in self.t_grid)
        if any(b <= a for a, b in zip(grid, grid[1:])) or (grid and grid[0] < 0):
            raise ValueError("T_grid must be ascending and non-negative")
        object.__setattr__(self, "t_grid", grid)
        object.__setattr__(self, "d_range", (int(lo), int(hi)))
        if self.parallelism is not None and self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")

    def to_dict(self) -> dict:
        p = self.params
        return {
            "n": p.n,
            "m": p.m,
            "N": p.recency_scale,
            "gamma": p.pareto.gamma,
            "a": p.pareto.a,
            "kind": p.kind.label,
            "seed": p.seed.master_seed,
            "record_weight_trace": p.record_weight_trace,
            "replicas": self.replicas,
            "T_grid": list(self.t_grid),
            "d_range": list(self.d_range),
            "output_dir": self.output_dir,
            "parallelism": self.parallelism,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        required = {"n", "m", "N", "gamma", "kind", "seed", "replicas", "T_grid", "d_range"}
        missing = required - set(d)
        if missing:
            raise ValueError(f"config missing keys: {sorted(missing)}")
        params = ModelParams(
            n=int(d["n"]),
            m=int(d["m"]),
            recency_scale=int(d["N"]),
            pareto=ParetoParams(gamma=float(d["gamma"]), a=float(d.get("a", 1.0))),
            kind=parse_kind(str(d["kind"]), int(d["N"])),
            seed=SeedSpec(master_seed=int(d["seed"]), stream_id=0),
            record_weight_trace=bool(d.get("record_weight_trace", False)),
        )
        par = d.get("parallelism")
        return cls(
            params=params,
            replicas=int(d["replicas"]),
            t_grid=tuple(int(t) for t in d["T_grid"]),
            d_range=(int(d["d_range"][0]), int(d["d_range"][1])),
            output_dir=d.get("output_dir"),
            parallelism=None if par is None else int(par),
        )

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        with open(path) as f:
            return cls.from_dict(json.load(f))


@dataclass(frozen=True)
class ExperimentReport:
    """Aggregated ensemble results plus provenance; serializes to JSON/CSV."""

    config: dict
    degrees: list
    recency: list
    concentration: list
    weight_trace: Optional[dict]
    fits: dict
    seeds: list

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "degrees": self.degrees,
            "recency": self.recency,
            "concentration": self.concentration,
            "weight_trace": self.weight_trace,
            "fits": self.fits,
            "seeds": self.seeds,
        }

    def json_bytes(self) -> bytes:
        return (json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n").encode()

    def degree_table_csv(self) -> str:
        lines = ["d,mean_frac,std_frac,theory,rel_error,in_validity"]
        for row in self.degrees:
            theo = "" if row["theory"] is None else repr(row["theory"])
            rel = "" if row["rel_error"] is None else repr(row["rel_error"])
            val = "" if row["in_validity"] is None else str(row["in_validity"]).lower()
            lines.append(
                f"{row['d']},{row['mean_frac']!r},{row['std_frac']!r},{theo},{rel},{val}"
            )
        return "\n".join(lines) + "\n"

    def recency_table_csv(self) -> str:
        lines = ["T,mean,std,theory,abs_error"]
        for row in self.recency:
            theo = "" if row["theory"] is None else repr(row["theory"])
            err = "" if row["abs_error"] is None else repr(row["abs_error"])
            lines.append(f"{row['T']},{row['mean']!r},{row['std']!r},{theo},{err}")
        return "\n".join(lines) + "\n"

    def save(self, output_dir) -> dict:
        """Write report.json, degree_table.csv, recency_table.csv; returns paths."""
        out = Path(output_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = {
            "report": out / "report.json",
            "degree_table": out / "degree_table.csv",
            "recency_table": out / "recency_table.csv",
        }
        paths["report"].write_bytes(self.json_bytes())
        paths["degree_table"].write_text(self.degree_table_csv())
        paths["recency_table"].write_text(self.recency_table_csv())
        return paths


def _replica_summary(args) -> dict:
    """Generate one replica and reduce it to the statistics the report needs."""
    params, t_grid = args
    try:
        graph = generate(params)
        in_deg = stats.in_degrees(graph)
        tot_deg = in_deg + stats.out_degrees(graph)
        curve = stats.recency_curve(graph, t_grid) if t_grid else None
        summary = {
            "in_counts": np.bincount(in_deg),
            "total_counts": np.bincount(tot_deg),
            "e_vals": np.array([v for _, v in curve.points]) if curve else np.empty(0),
            "n_edges": graph.n_edges,
            "weight_dev": None,
        }
        if params.record_weight_trace:
            scale = params.recency_scale
            warmup = scale * math.log(scale)
            summary["weight_dev"] = stats.weight_deviation(
                graph.weight_trace, scale, pareto_mean(params.pareto), warmup
            )
        return summary
    except Exception as exc:
        raise RuntimeError(f"replica with stream_id {params.seed.stream_id} failed: {exc}") from exc


def _pad_counts(arrays, width):
    mat = np.zeros((len(arrays), width), dtype=np.int64)
    for i, arr in enumerate(arrays):
        mat[i, : arr.shape[0]] = arr
    return mat


def run_ensemble(config: ExperimentConfig) -> ExperimentReport:
    """Run all replicas, aggregate, compare to theory, and persist the report."""
    params = config.params
    n, m = params.n, params.m
    replica_params = [
        dataclasses.replace(
            params, seed=SeedSpec(params.seed.master_seed, r)
        )
        for r in range(config.replicas)
    ]
    jobs = [(rp, config.t_grid) for rp in replica_params]
    workers = config.parallelism if config.parallelism is not None else (os.cpu_count() or 1)
    workers = min(workers, config.replicas)
    if workers > 1:
        _warm_kernels(params)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            summaries = list(pool.map(_replica_summary, jobs))
    else:
        summaries = [_replica_summary(j) for j in jobs]

    width = max(
        max(s["in_counts"].shape[0] for s in summaries),
        max(s["total_counts"].shape[0] for s in summaries),
        config.d_range[1] + 1,
    )
    in_mat = _pad_counts([s["in_counts"] for s in summaries], width)
    tot_mat = _pad_counts([s["total_counts"] for s in summaries], width)

    gamma = params.pareto.gamma
    has_pred = params.kind.has_prediction
    pred = None
    if has_pred:
        pred = theory.prediction_for(params.kind, n, m, params.recency_scale, gamma)

    d_lo, d_hi = config.d_range
    degrees = []
    for d in range(d_lo, d_hi + 1):
        shifted = d - m  # moderate-d convention: compare in-degree shifted by m
        fracs = in_mat[:, shifted] / n if shifted >= 0 else np.zeros(config.replicas)
        mean = float(np.mean(fracs))
        row = {
            "d": d,
            "mean_frac": mean,
            "std_frac": float(np.std(fracs)),
            "theory": None,
            "rel_error": None,
            "in_validity": None,
        }
        if pred is not None:
            t_val = pred.density(d)
            row["theory"] = t_val
            row["rel_error"] = abs(mean - t_val) / t_val
            row["in_validity"] = bool(d <= pred.d_validity_max)
        degrees.append(row)

    recency = []
    for i, t in enumerate(config.t_grid):
        vals = np.array([s["e_vals"][i] for s in summaries])
        mean = float(np.mean(vals))
        row = {
            "T": int(t),
            "mean": mean,
            "std": float(np.std(vals)),
            "theory": None,
            "abs_error": None,
        }
        if pred is not None:
            t_val = pred.e_of_T(int(t))
            row["theory"] = t_val
            row["abs_error"] = abs(mean - t_val)
        recency.append(row)

    concentration = []
    if n >= 3:
        radius, _prob = theory.concentration_bound(n, params.recency_scale)
        for d in range(d_lo, d_hi + 1):
            counts = tot_mat[:, d].astype(np.float64)
            mean = float(np.mean(counts))
            within = float(np.mean(np.abs(counts - mean) <= radius))
            concentration.append(
                {"d": d, "radius": radius, "fraction_within": within}
            )

    weight_trace = None
    if params.record_weight_trace:
        scale = params.recency_scale
        weight_trace = {
            "warmup": scale * math.log(scale),
            "reference": scale * pareto_mean(params.pareto),
            "replicas": [
                {"max_abs_dev": s["weight_dev"][0], "max_rel_dev": s["weight_dev"][1]}
                for s in summaries
            ],
        }

    fits = {"power_law": None, "decay": None}
    pooled = np.sum(in_mat, axis=0)
    pooled_hist = DegreeHistogram(
        counts={int(d): int(c) for d, c in enumerate(pooled) if c},
        n=int(pooled.sum()),
        mode="in",
    )
    try:
        fit = fit_power_law(pooled_hist, d_min=2 * m)
        fits["power_law"] = dataclasses.asdict(fit)
    except ValueError:
        pass
    if config.t_grid:
        mean_curve = RecencyCurve(
            points=tuple((row["T"], row["mean"]) for row in recency)
        )
        try:
            fit = fit_exponential_decay(mean_curve, t_max=max(config.t_grid))
            fits["decay"] = dataclasses.asdict(fit)
        except ValueError:
            pass

    report = ExperimentReport(
        config=config.to_dict(),
        degrees=degrees,
        recency=recency,
        concentration=concentration,
        weight_trace=weight_trace,
        fits=fits,
        seeds=[
            {"master_seed": params.seed.master_seed, "stream_id": r}
            for r in range(config.replicas)
        ],
    )
    if config.output_dir is not None:
        report.save(config.output_dir)
    return report


def _warm_kernels(params: ModelParams) -> None:
    """Compile the generation kernels in the parent before forking workers."""
    tiny = dataclasses.replace(
        params,
        n=8,
        seed=SeedSpec(0, 0),
        record_weight_trace=False,
    )
    generate(tiny)


def compare_to_theory(report: ExperimentReport) -> list:
    """Flat empirical-vs-theory table from a finished report.

    Rows outside the validity range keep their errors but are flagged so
    pass/fail summaries can exclude them.
    """
    rows = []
    for r in report.degrees:
        rows.append(
            {
                "quantity": "degree_fraction",
                "x": r["d"],
                "empirical": r["mean_frac"],
                "spread": r["std_frac"],
                "theory": r["theory"],
                "error": r["rel_error"],
                "error_kind": "relative",
                "in_validity": r["in_validity"],
            }
        )
    for r in report.recency:
        rows.append(
            {
                "quantity": "e_of_T",
                "x": r["T"],
                "empirical": r["mean"],
                "spread": r["std"],
                "theory": r["theory"],
                "error": r["abs_error"],
                "error_kind": "absolute",
                "in_validity": True if r["theory"] is not None else None,
            }
        )
    return rows


# --- edge-list ingestion -------------------------------------------------------

_HEADER_RE = re.compile(
    rf"^# {FORMAT_NAME} n=(\d+) m=(\d+) N=(\d+) gamma=(\S+) a=(\S+) "
    rf"kind=(\S+) seed=(-?\d+):(\d+)$"
)


def ingest_edge_list(path, qualities_path=None) -> GrownGraph:
    """Read an edge-list file back into a graph usable by stats and fitting.

    The quality file is optional; without it, quality-dependent statistics
    are unavailable. Malformed input raises EdgeListParseError naming the
    offending line.
    """
    path = os.fspath(path)
    with open(path) as f:
        first = f.readline().rstrip("\n")
        match = _HEADER_RE.match(first)
        if not match:
            raise EdgeListParseError(f"{path}:1: missing or malformed header")
        n, m, scale = int(match[1]), int(match[2]), int(match[3])
        gamma, a = float(match[4]), float(match[5])
        kind_label, master, stream = match[6], int(match[7]), int(match[8])
        params = ModelParams(
            n=n,
            m=m,
            recency_scale=scale,
            pareto=ParetoParams(gamma=gamma, a=a),
            kind=parse_kind(kind_label, scale),
            seed=SeedSpec(master, stream),
        )
        sources, targets = [], []
        for lineno, line in enumerate(f, start=2):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 2:
                raise EdgeListParseError(f"{path}:{lineno}: expected 'source target'")
            try:
                s, t = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListParseError(f"{path}:{lineno}: non-integer vertex id") from None
            if not 1 <= t < s <= n:
                raise EdgeListParseError(
                    f"{path}:{lineno}: edge ({s}, {t}) violates 1 <= target < source <= n"
                )
            sources.append(s)
            targets.append(t)
    qualities = None
    if qualities_path is not None:
        qualities = _read_qualities(qualities_path, n)
    return GrownGraph(
        params=params,
        qualities=qualities,
        sources=np.array(sources, dtype=np.int32),
        targets=np.array(targets, dtype=np.int32),
        weight_trace=None,
    )


def _read_qualities(path, n: int) -> np.ndarray:
    path = os.fspath(path)
    values = []
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError:
                raise EdgeListParseError(f"{path}:{lineno}: non-numeric quality") from None
    if len(values) != n:
        raise EdgeListParseError(f"{path}: expected {n} qualities, found {len(values)}")
    return np.array(values)
