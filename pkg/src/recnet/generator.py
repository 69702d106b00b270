"""Growth process: fast index-backed generator and a naive exact oracle.

The process starts from two vertices joined by the edge (2, 1). At each later
step one vertex arrives with a fresh Pareto quality and draws m targets
independently, with replacement, among the existing vertices, each with
probability proportional to its current attractiveness. Graphs for different
sizes are always produced by independent runs.

Randomness is consumed in a fixed order -- one quality draw at vertex
creation, then m uniform draws for that step's targets -- so the fast
generator and the naive oracle see identical uniforms and their outputs can
be compared bitwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .attractiveness import (
    AgePower,
    AttractivenessKind,
    ExponentialRecency,
    GeneralFactorized,
    WeightIndex,
    WindowRecency,
    kind_code,
)
from .quality import ParetoParams, SeedSpec, derive_stream, pareto_quantile

NAIVE_CAP_DEFAULT = 10_000


@dataclass(frozen=True)
class ModelParams:
    """Full parameterization of one growth run.

    Parameters
    ----------
    n : int
        Number of vertices (>= 2).
    m : int
        Outdegree of every vertex from the third on.
    recency_scale : int
        Recency scale (window lifespan / exponential decay time). Must match
        the scale carried by the kind, when the kind has one.
    pareto : ParetoParams
    kind : AttractivenessKind
    seed : SeedSpec
    record_weight_trace : bool
        Record the total attractiveness ahead of each step's draws.
    """

    n: int
    m: int
    recency_scale: int
    pareto: ParetoParams
    kind: AttractivenessKind
    seed: SeedSpec
    record_weight_trace: bool = False

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.recency_scale < 1:
            raise ValueError(f"recency_scale must be >= 1, got {self.recency_scale}")
        scale = getattr(self.kind, "scale", None)
        if scale is not None and scale != self.recency_scale:
            raise ValueError(
                f"kind scale {scale} does not match recency_scale {self.recency_scale}"
            )

    @property
    def n_edges(self) -> int:
        return 1 + self.m * (self.n - 2)

    @property
    def n_draws(self) -> int:
        return self.n + self.m * (self.n - 2)


@dataclass(eq=False)
class GrownGraph:
    """Output of one growth run.

    ``qualities[i]`` is the quality of vertex i+1 (vertices are 1-based).
    Edges are stored in generation order as parallel source/target arrays;
    duplicates are kept. ``weight_trace[i]`` is the total attractiveness used
    to draw the edges of vertex i+2, when recorded. Ingested external graphs
    may carry no qualities.
    """

    params: ModelParams
    qualities: Optional[np.ndarray]
    sources: np.ndarray
    targets: np.ndarray
    weight_trace: Optional[np.ndarray] = None

    @property
    def n_vertices(self) -> int:
        return self.params.n

    @property
    def n_edges(self) -> int:
        return self.sources.shape[0]

    def edge_array(self) -> np.ndarray:
        """Edges as an (n_edges, 2) array in generation order."""
        return np.stack([self.sources, self.targets], axis=1)


def _uniforms(params: ModelParams) -> np.ndarray:
    return derive_stream(params.seed).random(params.n_draws)


def generate(params: ModelParams) -> GrownGraph:
    """Run the growth process with the incremental sampling index."""
    code = kind_code(params.kind)
    u = _uniforms(params)
    if code in (_kernels.WINDOW, _kernels.EXPONENTIAL):
        qual, src, tgt, trace = _kernels.grow_fast(
            u, params.n, params.m, code, float(params.recency_scale),
            params.pareto.gamma, params.pareto.a,
            1e-15, 300.0, params.record_weight_trace,
        )
        return GrownGraph(
            params=params,
            qualities=qual[1:].copy(),
            sources=src,
            targets=tgt,
            weight_trace=trace if params.record_weight_trace else None,
        )
    return _generate_indexed(params, u)


def _generate_indexed(params: ModelParams, u: np.ndarray) -> GrownGraph:
    """Python growth loop over a WeightIndex (exploratory kinds)."""
    n, m, p = params.n, params.m, params.pareto
    qual = np.empty(n + 1)
    qual[1] = pareto_quantile(u[0], p)
    qual[2] = pareto_quantile(u[1], p)
    src = np.empty(params.n_edges, np.int32)
    tgt = np.empty(params.n_edges, np.int32)
    src[0], tgt[0] = 2, 1
    trace = np.empty(n - 1) if params.record_weight_trace else None

    idx = WeightIndex(params.kind, capacity=n)
    # the seed edge leaves both initial vertices with total degree 1
    idx.push(qual[1], degree=1)
    if trace is not None:
        trace[0] = idx.total()
    k, e = 2, 1
    for v in range(3, n + 1):
        idx.push(qual[v - 1], degree=(1 if v - 1 == 2 else m))
        if trace is not None:
            trace[v - 2] = idx.total()
        qual[v] = pareto_quantile(u[k], p)
        k += 1
        step_targets = []
        for _ in range(m):
            t_id = idx.sample(u[k])
            k += 1
            src[e], tgt[e] = v, t_id
            e += 1
            step_targets.append(t_id)
        # all m draws of a step see the same weights; degree bumps land after
        for t_id in step_targets:
            idx.increment_degree(t_id)
    return GrownGraph(params, qual[1:].copy(), src, tgt, trace)


def generate_naive(params: ModelParams, cap: int = NAIVE_CAP_DEFAULT) -> GrownGraph:
    """Reference generator: per-step linear-scan weights, no truncation.

    Consumes the random stream in exactly the same order as `generate`, so
    for equal seeds the edge lists agree bitwise. Quadratic in n; refuses to
    run above `cap` vertices.
    """
    if params.n > cap:
        raise ValueError(f"naive generator capped at n <= {cap}, got {params.n}")
    n, m, p = params.n, params.m, params.pareto
    kind = params.kind
    u = _uniforms(params)

    qual = np.empty(n + 1)
    qual[1] = pareto_quantile(u[0], p)
    qual[2] = pareto_quantile(u[1], p)
    src = np.empty(params.n_edges, np.int32)
    tgt = np.empty(params.n_edges, np.int32)
    src[0], tgt[0] = 2, 1
    trace = np.empty(n - 1) if params.record_weight_trace else None
    deg = np.zeros(n + 1, np.int64)
    deg[1] = deg[2] = 1

    if trace is not None:
        trace[0] = float(np.sum(_naive_weights(kind, qual, deg, 1)))
    k, e = 2, 1
    for v in range(3, n + 1):
        t = v - 1  # pool size while vertex v draws
        w = _naive_weights(kind, qual, deg, t)
        cum = np.cumsum(w)
        tot = cum[-1]
        if not tot > 0.0:
            raise ValueError("total attractiveness is zero")
        if trace is not None:
            trace[v - 2] = tot
        qual[v] = pareto_quantile(u[k], p)
        k += 1
        step_targets = []
        for _ in range(m):
            j = int(np.searchsorted(cum, u[k] * tot, side="right"))
            k += 1
            if j >= t:
                j = t - 1
            while j > 0 and cum[j] == cum[j - 1]:
                j -= 1
            src[e], tgt[e] = v, j + 1
            e += 1
            step_targets.append(j + 1)
        deg[v] = m
        for t_id in step_targets:
            deg[t_id] += 1
    return GrownGraph(params, qual[1:].copy(), src, tgt, trace)


def _naive_weights(kind: AttractivenessKind, qual, deg, t) -> np.ndarray:
    """Weights of vertices 1..t for the step where the pool has size t."""
    ages = np.arange(t - 1, -1, -1, dtype=np.float64)  # vertex i has age t - i
    if isinstance(kind, WindowRecency):
        w = qual[1 : t + 1].copy()
        w[: max(0, t - kind.scale)] = 0.0
        return w
    if isinstance(kind, ExponentialRecency):
        return qual[1 : t + 1] * np.exp(-ages / kind.scale)
    if isinstance(kind, GeneralFactorized):
        w = np.ones(t)
        if kind.alpha1:
            w = w * qual[1 : t + 1]
        if kind.alpha2:
            w = w * deg[1 : t + 1]
        if kind.alpha3:
            w = w * np.exp(-ages / kind.tau)
        return w
    if isinstance(kind, AgePower):
        return deg[1 : t + 1] * (ages + 1.0) ** (-kind.exponent)
    raise TypeError(f"not an attractiveness kind: {kind!r}")


def in_degree_at_death(graph: GrownGraph, p: int) -> int:
    """Edges received by vertex p over its whole window lifespan.

    Only defined for window-mode graphs and for vertices that live their
    full lifespan away from both boundaries.
    """
    if not isinstance(graph.params.kind, WindowRecency):
        raise ValueError("death-time in-degree is only defined for window graphs")
    lo, hi = graph.params.recency_scale, graph.params.n - graph.params.recency_scale + 1
    if not lo <= p <= hi:
        raise ValueError(f"vertex {p} outside the fully-lived range [{lo}, {hi}]")
    # no edge can target p after its death, so the plain tally is exact
    return int(np.count_nonzero(graph.targets == p))


# --- edge-list serialization -------------------------------------------------

FORMAT_NAME = "recnet v1"


def header_line(params: ModelParams) -> str:
    p = params
    return (
        f"# {FORMAT_NAME} n={p.n} m={p.m} N={p.recency_scale} "
        f"gamma={p.pareto.gamma!r} a={p.pareto.a!r} kind={p.kind.label} "
        f"seed={p.seed.master_seed}:{p.seed.stream_id}"
    )


def write_edge_list(graph: GrownGraph, path) -> None:
    """Write the header line plus one 'source target' pair per line (1-based)."""
    with open(path, "w") as f:
        f.write(header_line(graph.params) + "\n")
        chunks = []
        for s, t in zip(graph.sources.tolist(), graph.targets.tolist()):
            chunks.append(f"{s} {t}\n")
            if len(chunks) >= 65536:
                f.write("".join(chunks))
                chunks = []
        f.write("".join(chunks))


def write_qualities(graph: GrownGraph, path) -> None:
    """Write one quality per line, in vertex order, at round-trip precision."""
    if graph.qualities is None:
        raise ValueError("graph carries no qualities")
    with open(path, "w") as f:
        f.write("".join(f"{q!r}\n" for q in graph.qualities.tolist()))


def write_trace(graph: GrownGraph, path) -> None:
    """Write one recorded total per line."""
    if graph.weight_trace is None:
        raise ValueError("graph carries no weight trace")
    with open(path, "w") as f:
        f.write("".join(f"{x!r}\n" for x in graph.weight_trace.tolist()))
