"""Seeded random streams and Pareto-distributed vertex qualities."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF


@dataclass(frozen=True)
class ParetoParams:
    """Quality distribution with density gamma * a**gamma / x**(gamma+1) for x > a.

    Parameters
    ----------
    gamma : float
        Tail exponent, must exceed 1 (otherwise the mean diverges).
    a : float
        Minimum quality (scale), must be positive.
    """

    gamma: float
    a: float = 1.0

    def __post_init__(self):
        if not self.gamma > 1:
            raise ValueError(f"gamma must be > 1, got {self.gamma}")
        if not self.a > 0:
            raise ValueError(f"a must be > 0, got {self.a}")


@dataclass(frozen=True)
class SeedSpec:
    """Master seed plus a stream id selecting one independent replica stream.

    Distinct (master_seed, stream_id) pairs key statistically independent
    streams; the same pair always reproduces the same draw sequence.
    """

    master_seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not -(2 ** 63) <= self.master_seed < 2 ** 64:
            raise ValueError("master_seed must fit in 64 bits")
        if self.stream_id < 0:
            raise ValueError("stream_id must be non-negative")


def derive_stream(seed: SeedSpec) -> np.random.Generator:
    """Return the deterministic random stream for a SeedSpec.

    Counter-based construction: the (master_seed, stream_id) pair is used
    directly as the Philox key, so replica streams share no state and can be
    created concurrently.
    """
    key = np.array([seed.master_seed & _MASK64, seed.stream_id], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def pareto_quantile(u: float, p: ParetoParams) -> float:
    """Inverse CDF a * (1 - u)**(-1/gamma); finite for every u in [0, 1)."""
    return p.a * (1.0 - u) ** (-1.0 / p.gamma)


def pareto_sample(stream: np.random.Generator, p: ParetoParams) -> float:
    """Draw one quality, consuming exactly one uniform from the stream."""
    return pareto_quantile(stream.random(), p)


def pareto_mean(p: ParetoParams) -> float:
    """Expected quality gamma * a / (gamma - 1)."""
    if not p.gamma > 1:
        raise ValueError("mean requires gamma > 1")
    return p.gamma * p.a / (p.gamma - 1.0)
