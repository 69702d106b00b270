import json
import math
from pathlib import Path

import numpy as np
import pytest

import recnet as rn

GOLDEN = Path(__file__).parent / "data" / "golden_stream_42_0.json"


class TestParetoQuantile:
    def test_left_endpoint(self):
        p = rn.ParetoParams(gamma=2, a=1)
        assert rn.pareto_quantile(0.0, p) == 1.0

    def test_hand_inversion(self):
        p = rn.ParetoParams(gamma=2, a=1)
        assert rn.pareto_quantile(0.75, p) == pytest.approx(2.0, rel=1e-12)

    def test_hand_inversion_scaled(self):
        p = rn.ParetoParams(gamma=3, a=2)
        assert rn.pareto_quantile(0.5, p) == pytest.approx(2 * 2 ** (1 / 3), rel=1e-12)


class TestParetoMean:
    @pytest.mark.parametrize(
        "gamma,a,expected",
        [(2, 1, 2.0), (3, 1, 1.5), (1000, 1, 1000 / 999)],
    )
    def test_values(self, gamma, a, expected):
        assert rn.pareto_mean(rn.ParetoParams(gamma, a)) == pytest.approx(expected, rel=1e-12)

    def test_rejects_gamma_at_most_one(self):
        with pytest.raises(ValueError):
            rn.ParetoParams(gamma=1.0, a=1.0)
        with pytest.raises(ValueError):
            rn.ParetoParams(gamma=0.5, a=1.0)

    def test_rejects_nonpositive_a(self):
        with pytest.raises(ValueError):
            rn.ParetoParams(gamma=2.0, a=0.0)


class TestStreams:
    def test_same_spec_same_draws(self):
        s1 = rn.derive_stream(rn.SeedSpec(123, 4))
        s2 = rn.derive_stream(rn.SeedSpec(123, 4))
        assert np.array_equal(s1.random(10), s2.random(10))

    def test_distinct_streams_differ(self):
        s0 = rn.derive_stream(rn.SeedSpec(123, 0))
        s1 = rn.derive_stream(rn.SeedSpec(123, 1))
        assert not np.array_equal(s0.random(10), s1.random(10))

    def test_golden_reference_sequence(self):
        golden = json.loads(GOLDEN.read_text())
        stream = rn.derive_stream(rn.SeedSpec(golden["master_seed"], golden["stream_id"]))
        draws = stream.random(len(golden["uniform_draws"]))
        assert draws.tolist() == golden["uniform_draws"]

    def test_rejects_negative_stream_id(self):
        with pytest.raises(ValueError):
            rn.SeedSpec(1, -1)


class TestSampling:
    def test_samples_at_least_a(self):
        p = rn.ParetoParams(gamma=2.5, a=1.5)
        stream = rn.derive_stream(rn.SeedSpec(9))
        xs = np.array([rn.pareto_sample(stream, p) for _ in range(10_000)])
        assert np.all(xs >= p.a)

    def test_mean_within_three_standard_errors(self):
        # gamma=3 has finite variance a^2*gamma/((gamma-1)^2 (gamma-2)) = 0.75
        p = rn.ParetoParams(gamma=3, a=1)
        u = rn.derive_stream(rn.SeedSpec(10)).random(1_000_000)
        xs = p.a * (1 - u) ** (-1 / p.gamma)
        se = math.sqrt(0.75 / xs.size)
        assert abs(xs.mean() - 1.5) <= 3 * se

    @pytest.mark.parametrize("x", [2, 4, 8])
    def test_tail_matches_ccdf(self, x):
        p = rn.ParetoParams(gamma=3, a=1)
        u = rn.derive_stream(rn.SeedSpec(11)).random(1_000_000)
        xs = p.a * (1 - u) ** (-1 / p.gamma)
        assert abs(np.mean(xs > x) - (p.a / x) ** 3) <= 0.01
