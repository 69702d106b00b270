"""Empirical statistics over a grown graph.

Everything here is a pure function of the finished graph: degree histograms,
the age-gap curve e(T), quality-conditioned death-time in-degrees, and
deviations of the recorded weight trace from its expected level. Multi-edges
count with multiplicity throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .attractiveness import WindowRecency
from .generator import GrownGraph

MODES = ("total", "in")


@dataclass(frozen=True)
class DegreeHistogram:
    """Degree -> vertex count map; counts sum to the number of vertices."""

    counts: dict
    n: int
    mode: str

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if sum(self.counts.values()) != self.n:
            raise ValueError("histogram counts must sum to the vertex count")

    def count(self, d: int) -> int:
        return self.counts.get(d, 0)

    def as_arrays(self):
        """(degrees, counts) sorted by degree."""
        ds = np.array(sorted(self.counts), dtype=np.int64)
        cs = np.array([self.counts[int(d)] for d in ds], dtype=np.int64)
        return ds, cs


@dataclass(frozen=True)
class RecencyCurve:
    """Pointwise e(T): fraction of edges with endpoint age difference > T."""

    points: tuple

    def values(self):
        return np.array([v for _, v in self.points])

    def grid(self):
        return np.array([t for t, _ in self.points], dtype=np.int64)


@dataclass(frozen=True)
class ConditionalDegreeEstimate:
    """Mean death-time in-degree per quality bin: (q_low, q_high, mean, count)."""

    quality_bins: tuple


def in_degrees(graph: GrownGraph) -> np.ndarray:
    """Multiplicity-aware in-degree of every vertex (entry i is vertex i+1)."""
    return np.bincount(graph.targets, minlength=graph.n_vertices + 1)[1:]


def out_degrees(graph: GrownGraph) -> np.ndarray:
    return np.bincount(graph.sources, minlength=graph.n_vertices + 1)[1:]


def total_degrees(graph: GrownGraph) -> np.ndarray:
    return in_degrees(graph) + out_degrees(graph)


def degree_histogram(graph: GrownGraph, mode: str = "total") -> DegreeHistogram:
    """Exact vertex counts per degree, in 'total' or 'in' mode."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    deg = total_degrees(graph) if mode == "total" else in_degrees(graph)
    counts = np.bincount(deg)
    table = {int(d): int(c) for d, c in enumerate(counts) if c}
    return DegreeHistogram(counts=table, n=graph.n_vertices, mode=mode)


def e_of_T(graph: GrownGraph, T: int) -> float:
    """Fraction of edges whose endpoints are more than T steps apart."""
    if T < 0:
        raise ValueError("T must be >= 0")
    gaps = graph.sources.astype(np.int64) - graph.targets
    return float(np.count_nonzero(gaps > T)) / graph.n_edges


def recency_curve(graph: GrownGraph, t_grid) -> RecencyCurve:
    """e(T) evaluated on an ascending grid of integer T values."""
    grid = [int(t) for t in t_grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly ascending")
    if grid and grid[0] < 0:
        raise ValueError("T must be >= 0")
    gaps = np.sort(graph.sources.astype(np.int64) - graph.targets)
    n_e = gaps.shape[0]
    pts = []
    for t in grid:
        above = n_e - int(np.searchsorted(gaps, t, side="right"))
        pts.append((t, above / n_e))
    return RecencyCurve(points=tuple(pts))


def weight_deviation(trace, scale: int, mean_quality: float, warmup: float):
    """Max absolute / relative deviation of the trace from scale * mean_quality.

    Trace entry i belongs to step i+2; only steps >= warmup are scored.
    """
    trace = np.asarray(trace, dtype=np.float64)
    if trace.size == 0:
        raise ValueError("empty trace")
    steps = np.arange(2, trace.size + 2)
    sel = trace[steps >= warmup]
    if sel.size == 0:
        raise ValueError("no trace entries after warmup")
    ref = scale * mean_quality
    dev = float(np.max(np.abs(sel - ref)))
    return dev, dev / ref


def indegree_by_quality(graph: GrownGraph, bin_edges) -> ConditionalDegreeEstimate:
    """Mean death-time in-degree per quality bin over fully-lived vertices.

    Window mode only: vertices within one lifespan of either boundary are
    excluded, so every scored vertex has its final in-degree. Bins are
    right-open intervals between consecutive edges; pass inf to close the
    tail.
    """
    if not isinstance(graph.params.kind, WindowRecency):
        raise ValueError("death-time statistics are only defined for window graphs")
    if graph.qualities is None:
        raise ValueError("graph carries no qualities")
    edges = [float(b) for b in bin_edges]
    if len(edges) < 2 or any(b <= a for a, b in zip(edges, edges[1:])):
        raise ValueError("bin edges must be strictly ascending, at least two")
    if edges[0] < graph.params.pareto.a:
        raise ValueError("bins must start at or above the minimum quality")
    scale, n = graph.params.recency_scale, graph.n_vertices
    lo, hi = scale, n - scale + 1
    if lo > hi:
        raise ValueError("graph too small: no vertex lives a full lifespan")
    q = graph.qualities[lo - 1 : hi]
    d_in = in_degrees(graph)[lo - 1 : hi]
    bins = []
    for q_lo, q_hi in zip(edges, edges[1:]):
        mask = (q >= q_lo) & (q < q_hi)
        count = int(np.count_nonzero(mask))
        mean = float(np.mean(d_in[mask])) if count else None
        bins.append((q_lo, q_hi, mean, count))
    return ConditionalDegreeEstimate(quality_bins=tuple(bins))


def log_bins(a: float, q_max: float, num: int) -> list:
    """Logarithmically spaced bin edges from a to q_max, plus an open tail."""
    if num < 1:
        raise ValueError("need at least one bin")
    edges = list(np.geomspace(a, q_max, num + 1))
    edges.append(float("inf"))
    return edges


# --- CSV export ---------------------------------------------------------------

def histogram_csv(hist: DegreeHistogram) -> str:
    lines = ["d,count"]
    for d in sorted(hist.counts):
        lines.append(f"{d},{hist.counts[d]}")
    return "\n".join(lines) + "\n"


def curve_csv(curve: RecencyCurve) -> str:
    lines = ["T,e_of_T"]
    for t, v in curve.points:
        lines.append(f"{t},{v!r}")
    return "\n".join(lines) + "\n"
