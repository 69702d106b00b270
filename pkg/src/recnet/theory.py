"""Closed-form predictions for the two analyzed attractiveness kinds.

The degree density, the recency curve, the concentration radius for vertex
counts, and the degree range on which the density formula is trustworthy.
Error terms of the underlying asymptotics carry no explicit constants, so
callers absorb them into comparison tolerances; values beyond the validity
range are reported but flagged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .attractiveness import AttractivenessKind, ExponentialRecency, WindowRecency


def alpha_constant(gamma: float, alpha_choice: Optional[float] = None) -> float:
    """Auxiliary moment order entering the validity-range exponents.

    Fixed at 2 whenever gamma > 2; for 1 < gamma <= 2 any value strictly
    between 1 and gamma works, defaulting to the midpoint.
    """
    if not gamma > 1:
        raise ValueError("gamma must be > 1")
    if gamma > 2:
        return 2.0
    if alpha_choice is None:
        return (1.0 + gamma) / 2.0
    if not 1.0 < alpha_choice < gamma:
        raise ValueError(f"alpha_choice must lie in (1, {gamma}), got {alpha_choice}")
    return float(alpha_choice)


def predicted_degree_density(d: float, m: int, gamma: float) -> float:
    """Predicted fraction of vertices of degree d: gamma/d^(gamma+1) * ((gamma-1)m/gamma)^gamma."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if not gamma > 1:
        raise ValueError("gamma must be > 1")
    if m < 1:
        raise ValueError("m must be >= 1")
    return gamma * d ** (-gamma - 1.0) * ((gamma - 1.0) * m / gamma) ** gamma


def predicted_eT(kind: AttractivenessKind, T: int, scale: int) -> float:
    """Predicted e(T): max(0, 1 - T/scale) for the window, exp(-T/scale) for decay."""
    if T < 0:
        raise ValueError("T must be >= 0")
    if scale < 1:
        raise ValueError("scale must be >= 1")
    if isinstance(kind, WindowRecency):
        return max(0.0, 1.0 - T / scale)
    if isinstance(kind, ExponentialRecency):
        return math.exp(-T / scale)
    raise ValueError(f"no recency prediction for exploratory kind {kind.label!r}")


def concentration_bound(n: int, scale: int):
    """(radius, probability) bound for per-degree vertex-count fluctuations.

    A count deviates from its expectation by more than sqrt(scale * n * ln n)
    with probability at most 2 / ln n.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    if scale < 1:
        raise ValueError("scale must be >= 1")
    log_n = math.log(n)
    return math.sqrt(scale * n * log_n), 2.0 / log_n


def degree_validity_max(
    kind: AttractivenessKind, n: int, scale: int, gamma: float, alpha: float
) -> float:
    """Largest degree (order of magnitude) where the density formula applies."""
    if n < 2 or not gamma > 1 or not alpha > 1:
        raise ValueError("invalid parameters")
    if isinstance(kind, WindowRecency):
        if scale < 1:
            raise ValueError("scale must be >= 1")
        return min(
            (n / scale) ** (1.0 / (gamma + 1.0)),
            scale ** ((alpha - 1.0) / (gamma + alpha + 1.0)),
        )
    if isinstance(kind, ExponentialRecency):
        if scale < 2:
            raise ValueError("exponential validity range needs scale >= 2")
        return min(
            (n / (scale * math.log(scale))) ** (1.0 / (gamma + 1.0)),
            scale ** ((alpha - 1.0) / (alpha + (gamma + 1.0) * (alpha + 1.0))),
        )
    raise ValueError(f"no validity range for exploratory kind {kind.label!r}")


@dataclass(frozen=True)
class TheoryPrediction:
    """Bundle of closed-form targets for one parameterization."""

    density: Callable[[float], float]
    e_of_T: Callable[[int], float]
    concentration_radius: float
    concentration_prob_bound: float
    d_validity_max: float
    alpha: float


def prediction_for(
    kind: AttractivenessKind,
    n: int,
    m: int,
    scale: int,
    gamma: float,
    alpha_choice: Optional[float] = None,
) -> TheoryPrediction:
    """Build the full prediction bundle for one analyzed parameterization."""
    alpha = alpha_constant(gamma, alpha_choice)
    radius, prob = concentration_bound(n, scale)
    return TheoryPrediction(
        density=lambda d: predicted_degree_density(d, m, gamma),
        e_of_T=lambda T: predicted_eT(kind, T, scale),
        concentration_radius=radius,
        concentration_prob_bound=prob,
        d_validity_max=degree_validity_max(kind, n, scale, gamma, alpha),
        alpha=alpha,
    )
