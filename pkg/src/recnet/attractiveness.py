"""Attractiveness functions and the incremental weighted-sampling index.

Two kinds are backed by closed-form predictions: a hard recency window
(quality while alive, zero afterwards) and exponential decay of quality with
age. Two further kinds are exploratory, with no theory attached: the
factorized quality/degree/decay family and pure degree-times-age-power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import _kernels
from ._kernels import AGE_POWER, EXPONENTIAL, GENERAL, WINDOW


@dataclass(frozen=True)
class WindowRecency:
    """Vertex keeps weight q for `scale` steps after appearing, then drops to 0."""

    scale: int

    def __post_init__(self):
        if self.scale < 1:
            raise ValueError("window scale must be >= 1")

    label_prefix = "window"
    has_prediction = True

    @property
    def label(self) -> str:
        return "window"


@dataclass(frozen=True)
class ExponentialRecency:
    """Vertex weight decays as q * exp(-age / scale)."""

    scale: int

    def __post_init__(self):
        if self.scale < 1:
            raise ValueError("exponential scale must be >= 1")

    label_prefix = "exp"
    has_prediction = True

    @property
    def label(self) -> str:
        return "exp"


@dataclass(frozen=True)
class GeneralFactorized:
    """Exploratory family q**alpha1 * degree**alpha2 * exp(-alpha3 * age / tau).

    No closed-form predictions are attached to this kind. Degree here is the
    multiplicity-aware total degree, so freshly added vertices always carry
    positive weight when alpha2 = 1.
    """

    alpha1: int
    alpha2: int
    alpha3: int
    tau: float

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "alpha3"):
            if getattr(self, name) not in (0, 1):
                raise ValueError(f"{name} must be 0 or 1")
        if not self.tau > 0:
            raise ValueError("tau must be positive")

    label_prefix = "general"
    has_prediction = False

    @property
    def label(self) -> str:
        return f"general:{self.alpha1}{self.alpha2}{self.alpha3}:{self.tau:g}"


@dataclass(frozen=True)
class AgePower:
    """Exploratory degree * (age + 1)**(-exponent) weighting.

    The age is shifted by one so the newest vertex (age 0) keeps a finite
    weight. No closed-form predictions are attached to this kind.
    """

    exponent: float

    def __post_init__(self):
        if not self.exponent > 0:
            raise ValueError("exponent must be positive")

    label_prefix = "agepower"
    has_prediction = False

    @property
    def label(self) -> str:
        return f"agepower:{self.exponent:g}"


AttractivenessKind = Union[WindowRecency, ExponentialRecency, GeneralFactorized, AgePower]


def parse_kind(text: str, scale: int) -> AttractivenessKind:
    """Parse a kind label: window | exp | general:<a1><a2><a3>:<tau> | agepower:<exp>."""
    if text == "window":
        return WindowRecency(scale)
    if text == "exp":
        return ExponentialRecency(scale)
    if text.startswith("general:"):
        parts = text.split(":")
        if len(parts) != 3 or len(parts[1]) != 3 or not set(parts[1]) <= {"0", "1"}:
            raise ValueError(f"bad general kind spec: {text!r}")
        a1, a2, a3 = (int(c) for c in parts[1])
        return GeneralFactorized(a1, a2, a3, float(parts[2]))
    if text.startswith("agepower:"):
        return AgePower(float(text.split(":", 1)[1]))
    raise ValueError(f"unknown attractiveness kind: {text!r}")


def kind_code(kind: AttractivenessKind) -> int:
    """Integer code used by the compiled kernels."""
    if isinstance(kind, WindowRecency):
        return WINDOW
    if isinstance(kind, ExponentialRecency):
        return EXPONENTIAL
    if isinstance(kind, GeneralFactorized):
        return GENERAL
    if isinstance(kind, AgePower):
        return AGE_POWER
    raise TypeError(f"not an attractiveness kind: {kind!r}")


def attr_value(kind: AttractivenessKind, q: float, degree: int, birth: int, now: int) -> float:
    """Weight of one vertex of quality q born at step `birth`, observed at `now`.

    Degree only matters for kinds with a degree factor.
    """
    if birth > now:
        raise ValueError(f"birth {birth} is after now {now}")
    if birth < 1:
        raise ValueError("birth must be >= 1")
    age = now - birth
    if isinstance(kind, WindowRecency):
        return q if age < kind.scale else 0.0
    if isinstance(kind, ExponentialRecency):
        return q * math.exp(-age / kind.scale)
    if isinstance(kind, GeneralFactorized):
        w = 1.0
        if kind.alpha1:
            w *= q
        if kind.alpha2:
            w *= degree
        if kind.alpha3:
            w *= math.exp(-age / kind.tau)
        return w
    if isinstance(kind, AgePower):
        return degree * (age + 1.0) ** (-kind.exponent)
    raise TypeError(f"not an attractiveness kind: {kind!r}")


class WeightIndex:
    """Incremental prefix-sum index over vertex weights.

    Supports appending a vertex per step (which applies the kind's decay or
    eviction), degree increments for degree-sensitive kinds, the logical
    total, and inverse-CDF sampling. Owned by one sequential consumer.

    Parameters
    ----------
    kind : AttractivenessKind
    capacity : int
        Initial vertex capacity; the index grows by doubling beyond it.
    truncation_epsilon : float
        Shifted keys below this fraction of the total are zeroed during
        exponential-mode rebuilds (bias per edge is at most this fraction).
        Use 0 for exact behaviour.
    rescale_cap : float
        Shifted-exponent cap, in natural-log units, that triggers a rebuild
        with a fresh base.
    """

    def __init__(self, kind, capacity=64, truncation_epsilon=1e-15, rescale_cap=300.0):
        self.kind = kind
        self.truncation_epsilon = float(truncation_epsilon)
        self.rescale_cap = float(rescale_cap)
        if self.truncation_epsilon < 0:
            raise ValueError("truncation_epsilon must be >= 0")
        if self.rescale_cap <= 0:
            raise ValueError("rescale_cap must be positive")
        self._code = kind_code(kind)
        cap = max(int(capacity), 1)
        self._tree = np.zeros(cap + 1)
        self._leaf = np.zeros(cap + 1)
        self._qual = np.zeros(cap + 1)
        self._deg = np.zeros(cap + 1, dtype=np.int64)
        self._size = 0
        self._base = 1
        self._total = 0.0
        self._comp = 0.0
        # age-power mode rebuilds its weights lazily per step
        self._stamp = -1
        self._cum = None

    @property
    def current_step(self) -> int:
        """Number of vertices pushed so far."""
        return self._size

    @property
    def window_start(self) -> int:
        """First alive vertex (window mode); 1 for kinds without eviction."""
        if self._code == WINDOW:
            return max(1, self._size - self.kind.scale + 1)
        return 1

    def _capacity(self) -> int:
        return self._tree.shape[0] - 1

    def _grow(self, need: int):
        cap = self._capacity()
        while cap < need:
            cap *= 2
        for name in ("_tree", "_leaf", "_qual"):
            old = getattr(self, name)
            new = np.zeros(cap + 1, dtype=old.dtype)
            new[: old.shape[0]] = old
            setattr(self, name, new)
        old = self._deg
        new = np.zeros(cap + 1, dtype=np.int64)
        new[: old.shape[0]] = old
        self._deg = new
        _kernels.fenwick_build(self._tree, self._leaf)

    def _decay_scale(self) -> float:
        if self._code == EXPONENTIAL:
            return float(self.kind.scale)
        if self._code == GENERAL and self.kind.alpha3:
            return self.kind.tau
        return 0.0  # no decay

    def push(self, q: float, degree: int = 1) -> None:
        """Append the next vertex with quality q (and starting degree).

        Advances the step: exponential-family weights decay by one step and
        the window evicts the vertex whose lifespan just ended.
        """
        if not q > 0:
            raise ValueError("quality must be positive")
        v = self._size + 1
        if v > self._capacity():
            self._grow(v)
        self._qual[v] = q
        self._deg[v] = degree
        if self._code == WINDOW:
            self._total, self._comp = _kernels.window_push(
                self._tree, self._leaf, self._size, q, self.kind.scale,
                self._total, self._comp,
            )
        elif self._code == EXPONENTIAL:
            self._base, self._total, self._comp = _kernels.exp_push(
                self._tree, self._leaf, self._qual, self._size, q,
                float(self.kind.scale), self._base, self.rescale_cap,
                self.truncation_epsilon, self._total, self._comp,
            )
        elif self._code == GENERAL:
            key = self._general_key(q, degree, v)
            self._base, self._total, self._comp = self._general_push(v, key)
        else:  # AGE_POWER: weights depend on age, recomputed at sampling time
            pass
        self._size = v
        self._stamp = -1

    def _general_key(self, q, degree, v):
        kind = self.kind
        w = 1.0
        if kind.alpha1:
            w *= q
        if kind.alpha2:
            w *= degree
        if kind.alpha3:
            w *= math.exp((v - self._base) / kind.tau)
        return w

    def _general_push(self, v, key):
        kind = self.kind
        base, total, comp = self._base, self._total, self._comp
        if kind.alpha3 and (v - base) / kind.tau > self.rescale_cap:
            base = v
            total = comp = 0.0
            for i in range(1, v):
                w = 1.0
                if kind.alpha1:
                    w *= self._qual[i]
                if kind.alpha2:
                    w *= self._deg[i]
                w *= math.exp((i - v) / kind.tau)
                self._leaf[i] = w
                total, comp = _kernels.neumaier_add(total, comp, w)
            if self.truncation_epsilon > 0:
                cut = self.truncation_epsilon * (total + comp)
                total = comp = 0.0
                for i in range(1, v):
                    if self._leaf[i] < cut:
                        self._leaf[i] = 0.0
                    else:
                        total, comp = _kernels.neumaier_add(total, comp, self._leaf[i])
            _kernels.fenwick_build(self._tree, self._leaf)
            key = self._general_key(self._qual[v], self._deg[v], v)
        self._leaf[v] = key
        _kernels.fenwick_add(self._tree, v, key)
        total, comp = _kernels.neumaier_add(total, comp, key)
        return base, total, comp

    def increment_degree(self, vertex: int, by: int = 1) -> None:
        """Record `by` received edges on a vertex (degree-sensitive kinds only).

        For the factorized kind with a degree factor this updates the stored
        weight in place; for other kinds only the tracked degree changes.
        """
        if not 1 <= vertex <= self._size:
            raise ValueError(f"vertex {vertex} not in index")
        self._deg[vertex] += by
        if self._code == GENERAL and self.kind.alpha2:
            old = self._leaf[vertex]
            if old != 0.0:  # truncated-away entries stay dropped
                new = self._general_key(self._qual[vertex], self._deg[vertex], vertex)
                _kernels.fenwick_add(self._tree, vertex, new - old)
                self._leaf[vertex] = new
                self._total, self._comp = _kernels.neumaier_add(
                    self._total, self._comp, new - old
                )
        self._stamp = -1

    def _agepower_weights(self):
        t = self._size
        ages = t - np.arange(1, t + 1, dtype=np.float64)
        return self._deg[1 : t + 1] * (ages + 1.0) ** (-self.kind.exponent)

    def _agepower_cum(self):
        if self._stamp != self._size or self._cum is None:
            self._cum = np.cumsum(self._agepower_weights())
            self._stamp = self._size
        return self._cum

    def total(self) -> float:
        """Total attractiveness of the currently indexed vertices."""
        if self._size == 0:
            return 0.0
        if self._code == AGE_POWER:
            return float(self._agepower_cum()[-1])
        raw = self._total + self._comp
        scale = self._decay_scale()
        if scale:
            return raw * math.exp(-(self._size - self._base) / scale)
        return raw

    def weight_of(self, vertex: int) -> float:
        """Current logical weight of one vertex."""
        if not 1 <= vertex <= self._size:
            raise ValueError(f"vertex {vertex} not in index")
        if self._code == AGE_POWER:
            age = self._size - vertex
            return float(self._deg[vertex] * (age + 1.0) ** (-self.kind.exponent))
        scale = self._decay_scale()
        if scale:
            return float(self._leaf[vertex] * math.exp(-(self._size - self._base) / scale))
        return float(self._leaf[vertex])

    def sample(self, u: float) -> int:
        """Smallest vertex whose cumulative weight prefix strictly exceeds u * total."""
        if self._size == 0:
            raise ValueError("cannot sample from an empty index")
        if self._code == AGE_POWER:
            cum = self._agepower_cum()
            tot = cum[-1]
            if not tot > 0.0:
                raise ValueError("all weights are zero")
            j = int(np.searchsorted(cum, u * tot, side="right"))
            if j >= self._size:
                j = self._size - 1
            while j > 0 and cum[j] == cum[j - 1]:
                j -= 1
            return j + 1
        tot = self._total + self._comp
        if not tot > 0.0:
            raise ValueError("all weights are zero")
        return int(_kernels.fenwick_sample(self._tree, self._leaf, self._size, u, tot))
