"""Parameter estimation from empirical data.

Power-law tail exponent of a degree histogram (continuous MLE with the
half-integer discreteness correction, with an OLS log-log slope as a
cross-check) and the decay scale of a recency curve via log-linear least
squares.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .stats import DegreeHistogram, RecencyCurve

MIN_TAIL_COUNT = 10
MIN_DECAY_POINTS = 4


@dataclass(frozen=True)
class PowerLawFit:
    """Estimated tail exponent of a degree distribution."""

    exponent_mle: float
    exponent_ols: float
    d_min: int
    tail_count: int

    def __post_init__(self):
        if self.tail_count < MIN_TAIL_COUNT:
            raise ValueError(f"tail has {self.tail_count} points, need >= {MIN_TAIL_COUNT}")
        if not (self.exponent_mle > 1 and self.exponent_ols > 1):
            raise ValueError("fitted exponents must exceed 1")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


@dataclass(frozen=True)
class DecayFit:
    """Exponential decay scale fitted to a recency curve."""

    scale_estimate: float
    intercept: float
    residual_rms: float

    def __post_init__(self):
        if not self.scale_estimate > 0:
            raise ValueError("scale_estimate must be positive")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def fit_power_law(hist: DegreeHistogram, d_min: int) -> PowerLawFit:
    """Fit the tail exponent of a degree histogram over degrees >= d_min.

    The MLE is 1 + tail_count / sum(count_d * ln(d / (d_min - 1/2))); the OLS
    estimate is the negative slope of ln(count) against ln(degree) over the
    same tail. Zero-count degrees simply never appear in the histogram.
    """
    if d_min < 2:
        raise ValueError("d_min must be >= 2")
    tail = {d: c for d, c in hist.counts.items() if d >= d_min}
    tail_count = sum(tail.values())
    if tail_count < MIN_TAIL_COUNT:
        raise ValueError(f"tail has {tail_count} vertices, need >= {MIN_TAIL_COUNT}")
    if len(tail) < 2:
        raise ValueError("degenerate tail: all mass at a single degree")
    log_sum = sum(c * math.log(d / (d_min - 0.5)) for d, c in tail.items())
    mle = 1.0 + tail_count / log_sum
    ds = np.array(sorted(tail), dtype=np.float64)
    cs = np.array([tail[int(d)] for d in ds], dtype=np.float64)
    slope, _ = np.polyfit(np.log(ds), np.log(cs), 1)
    return PowerLawFit(
        exponent_mle=float(mle),
        exponent_ols=float(-slope),
        d_min=d_min,
        tail_count=tail_count,
    )


def fit_exponential_decay(curve: RecencyCurve, t_max: int) -> DecayFit:
    """Fit scale from ln e(T) ~ intercept - T/scale over positive points with T <= t_max.

    Exact (zero residual) on any noiseless log-linear curve; degenerate flat
    or rising curves are rejected.
    """
    pts = [(t, v) for t, v in curve.points if v > 0 and t <= t_max]
    if len(pts) < MIN_DECAY_POINTS:
        raise ValueError(f"need >= {MIN_DECAY_POINTS} positive points, got {len(pts)}")
    ts = np.array([t for t, _ in pts], dtype=np.float64)
    ys = np.log([v for _, v in pts])
    slope, intercept = np.polyfit(ts, ys, 1)
    if not slope < 0:
        raise ValueError("curve does not decay: non-negative log-slope")
    resid = ys - (slope * ts + intercept)
    return DecayFit(
        scale_estimate=float(-1.0 / slope),
        intercept=float(intercept),
        residual_rms=float(np.sqrt(np.mean(resid ** 2))),
    )
