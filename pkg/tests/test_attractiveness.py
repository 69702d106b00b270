import math

import numpy as np
import pytest

import recnet as rn
from recnet.attractiveness import WeightIndex


class TestAttrValue:
    def test_window_dies_at_scale(self):
        kind = rn.WindowRecency(scale=10)
        assert rn.attr_value(kind, q=3.0, degree=0, birth=5, now=15) == 0.0
        assert rn.attr_value(kind, q=3.0, degree=0, birth=5, now=14) == 3.0

    def test_exponential_at_age_zero(self):
        kind = rn.ExponentialRecency(scale=7)
        assert rn.attr_value(kind, q=3.0, degree=0, birth=4, now=4) == 3.0

    def test_exponential_one_lifetime(self):
        kind = rn.ExponentialRecency(scale=50)
        got = rn.attr_value(kind, q=2.0, degree=0, birth=1, now=51)
        assert got == pytest.approx(2 * math.exp(-1), rel=1e-12)

    def test_rejects_birth_after_now(self):
        with pytest.raises(ValueError):
            rn.attr_value(rn.WindowRecency(5), 1.0, 0, birth=9, now=8)

    def test_general_factors(self):
        kind = rn.GeneralFactorized(1, 1, 1, tau=10.0)
        got = rn.attr_value(kind, q=2.0, degree=3, birth=1, now=11)
        assert got == pytest.approx(6 * math.exp(-1), rel=1e-12)

    def test_agepower_shifted_age(self):
        kind = rn.AgePower(exponent=2.0)
        assert rn.attr_value(kind, q=5.0, degree=4, birth=3, now=3) == 4.0
        assert rn.attr_value(kind, q=5.0, degree=4, birth=3, now=4) == 1.0


class TestKinds:
    @pytest.mark.parametrize(
        "label", ["window", "exp", "general:110:2.5", "agepower:1.5"]
    )
    def test_parse_label_round_trip(self, label):
        kind = rn.parse_kind(label, scale=5)
        assert kind.label == label

    def test_parse_rejects_unknown(self):
        with pytest.raises(ValueError):
            rn.parse_kind("uniform", 5)
        with pytest.raises(ValueError):
            rn.parse_kind("general:21:1.0", 5)

    def test_invariants(self):
        with pytest.raises(ValueError):
            rn.WindowRecency(0)
        with pytest.raises(ValueError):
            rn.GeneralFactorized(1, 0, 1, tau=0.0)
        with pytest.raises(ValueError):
            rn.AgePower(0.0)

    def test_exploratory_kinds_flagged(self):
        assert rn.WindowRecency(3).has_prediction
        assert rn.ExponentialRecency(3).has_prediction
        assert not rn.GeneralFactorized(1, 0, 1, 2.0).has_prediction
        assert not rn.AgePower(1.0).has_prediction


class TestIndexPushTotal:
    def test_first_push_exponential(self):
        idx = WeightIndex(rn.ExponentialRecency(4))
        idx.push(5.0)
        assert idx.total() == 5.0

    def test_window_holds_exactly_scale_vertices(self):
        scale = 6
        idx = WeightIndex(rn.WindowRecency(scale))
        for _ in range(scale):
            idx.push(1.0)
        assert idx.total() == pytest.approx(scale, rel=1e-12)
        idx.push(1.0)
        assert idx.total() == pytest.approx(scale, rel=1e-12)

    def test_exponential_two_pushes(self):
        idx = WeightIndex(rn.ExponentialRecency(1))
        idx.push(1.0)
        idx.push(1.0)
        assert idx.total() == pytest.approx(1 + math.exp(-1), rel=1e-12)

    def test_single_vertex_total(self):
        idx = WeightIndex(rn.WindowRecency(3))
        idx.push(7.0)
        assert idx.total() == 7.0

    def test_window_total_is_quality_sum_before_eviction(self):
        rng = np.random.default_rng(3)
        qs = (1 - rng.random(12)) ** (-1 / 3)
        idx = WeightIndex(rn.WindowRecency(20))
        for q in qs:
            idx.push(float(q))
        assert idx.total() == pytest.approx(qs.sum(), rel=1e-12)

    def test_exponential_unit_quality_geometric_sum(self):
        scale = 5
        idx = WeightIndex(rn.ExponentialRecency(scale))
        for _ in range(9):
            idx.push(1.0)
        expected = sum(math.exp(-k / scale) for k in range(9))
        assert idx.total() == pytest.approx(expected, rel=1e-12)

    def test_rejects_nonpositive_quality(self):
        idx = WeightIndex(rn.WindowRecency(3))
        with pytest.raises(ValueError):
            idx.push(0.0)


class TestSampleTarget:
    def test_single_vertex_any_u(self):
        idx = WeightIndex(rn.WindowRecency(5))
        idx.push(3.3)
        for u in (0.0, 0.37, 0.999):
            assert idx.sample(u) == 1

    def test_two_vertices_hand_prefix(self):
        # weights (1, 3): u=0.2 -> threshold 0.8 < 1 -> vertex 1;
        # u=0.5 -> threshold 2.0 >= 1 -> vertex 2
        idx = WeightIndex(rn.WindowRecency(10))
        idx.push(1.0)
        idx.push(3.0)
        assert idx.sample(0.2) == 1
        assert idx.sample(0.5) == 2

    def test_rejects_empty_index(self):
        idx = WeightIndex(rn.WindowRecency(3))
        with pytest.raises(ValueError):
            idx.sample(0.5)

    def test_rejects_all_zero_weights(self):
        idx = WeightIndex(rn.GeneralFactorized(0, 1, 0, tau=1.0))
        idx.push(1.0, degree=0)
        with pytest.raises(ValueError):
            idx.sample(0.5)

    def test_dead_vertices_never_sampled(self):
        idx = WeightIndex(rn.WindowRecency(2))
        for q in (5.0, 1.0, 1.0):
            idx.push(q)
        rng = np.random.default_rng(8)
        picks = {idx.sample(float(u)) for u in rng.random(500)}
        assert picks <= {2, 3}

    @pytest.mark.parametrize("mode", ["window", "exp"])
    def test_matches_naive_linear_scan(self, mode):
        # randomized indices; the index decision must match a left-to-right
        # scan over the logical weights for the same u
        for trial in range(6):
            rng = np.random.default_rng(100 + trial)
            n = int(rng.integers(10, 10_000))
            scale = int(rng.integers(1, n + 1))
            kind = rn.WindowRecency(scale) if mode == "window" else rn.ExponentialRecency(scale)
            idx = WeightIndex(kind, capacity=n, truncation_epsilon=0.0)
            qs = (1 - rng.random(n)) ** (-1 / 3.0)
            for q in qs:
                idx.push(float(q))
            ages = n - np.arange(1, n + 1)
            if mode == "window":
                w = qs.copy()
                w[: max(0, n - scale)] = 0.0
            else:
                w = qs * np.exp(-ages / scale)
            cum = np.cumsum(w)
            tot = cum[-1]
            for u in rng.random(200):
                j = int(np.searchsorted(cum, u * tot, side="right"))
                j = min(j, n - 1)
                while j > 0 and cum[j] == cum[j - 1]:
                    j -= 1
                assert idx.sample(float(u)) == j + 1

    def test_empirical_frequencies_match_weights(self):
        weights = [0.5, 1.0, 2.0, 0.25, 3.0, 1.25, 0.75, 2.5, 1.0, 0.9]
        idx = WeightIndex(rn.WindowRecency(50), capacity=16)
        for q in weights:
            idx.push(q)
        total = sum(weights)
        draws = 1_000_000
        us = np.random.default_rng(2024).random(draws)
        counts = np.zeros(len(weights) + 1)
        for u in us:
            counts[idx.sample(float(u))] += 1
        for v, wv in enumerate(weights, start=1):
            p = wv / total
            sd = math.sqrt(draws * p * (1 - p))
            assert abs(counts[v] - draws * p) <= 4 * sd


class TestIndexInvariants:
    def test_window_alive_set_exact(self):
        scale = 7
        idx = WeightIndex(rn.WindowRecency(scale), capacity=4)
        rng = np.random.default_rng(5)
        for t in range(1, 40):
            idx.push(float(1 + rng.random()))
            alive = {v for v in range(1, t + 1) if idx.weight_of(v) > 0}
            assert alive == set(range(max(1, t - scale + 1), t + 1))
            assert idx.window_start == max(1, t - scale + 1)

    @pytest.mark.parametrize("scale", [50, 500])
    def test_exponential_total_tracks_direct_sum(self, scale):
        # eps=0 below the rescale horizon: total within 2^-40 of the direct sum
        rng = np.random.default_rng(11)
        n = 4000
        qs = (1 - rng.random(n)) ** (-1 / 2.5)
        idx = WeightIndex(rn.ExponentialRecency(scale), capacity=n, truncation_epsilon=0.0)
        for i, q in enumerate(qs, start=1):
            idx.push(float(q))
            if i % 800 == 0:
                direct = float(np.sum(qs[:i] * np.exp(-(i - np.arange(1, i + 1)) / scale)))
                assert abs(idx.total() - direct) / direct <= 2 ** -40

    def test_window_total_matches_alive_sum(self):
        rng = np.random.default_rng(12)
        n, scale = 5000, 100
        qs = (1 - rng.random(n)) ** (-1 / 2.2)
        idx = WeightIndex(rn.WindowRecency(scale), capacity=64)
        for i, q in enumerate(qs, start=1):
            idx.push(float(q))
            if i % 1000 == 0:
                direct = float(np.sum(qs[max(0, i - scale): i]))
                assert abs(idx.total() - direct) / direct <= 2 ** -40

    def test_rescale_keeps_total_and_sampling_sane(self):
        # small cap forces several rebuilds; totals stay near the direct sum
        scale = 10
        idx = WeightIndex(
            rn.ExponentialRecency(scale), capacity=2000,
            truncation_epsilon=1e-15, rescale_cap=20.0,
        )
        rng = np.random.default_rng(13)
        qs = 1 + rng.random(1500)
        for q in qs:
            idx.push(float(q))
        t = len(qs)
        direct = float(np.sum(qs * np.exp(-(t - np.arange(1, t + 1)) / scale)))
        assert idx.total() == pytest.approx(direct, rel=1e-10)
        picks = [idx.sample(float(u)) for u in rng.random(300)]
        assert all(idx.weight_of(j) > 0 for j in picks)

    def test_capacity_growth_preserves_state(self):
        idx_small = WeightIndex(rn.ExponentialRecency(9), capacity=2)
        idx_big = WeightIndex(rn.ExponentialRecency(9), capacity=512)
        rng = np.random.default_rng(14)
        qs = 1 + rng.random(300)
        for q in qs:
            idx_small.push(float(q))
            idx_big.push(float(q))
        assert idx_small.total() == pytest.approx(idx_big.total(), rel=1e-13)
        for u in rng.random(100):
            assert idx_small.sample(float(u)) == idx_big.sample(float(u))


class TestDegreeUpdates:
    def test_increment_updates_degree_weight(self):
        kind = rn.GeneralFactorized(1, 1, 0, tau=1.0)
        idx = WeightIndex(kind)
        idx.push(2.0, degree=1)
        idx.push(1.0, degree=1)
        assert idx.total() == pytest.approx(3.0)
        idx.increment_degree(1)
        assert idx.weight_of(1) == pytest.approx(4.0)
        assert idx.total() == pytest.approx(5.0)

    def test_increment_out_of_range(self):
        idx = WeightIndex(rn.WindowRecency(4))
        idx.push(1.0)
        with pytest.raises(ValueError):
            idx.increment_degree(2)

    def test_increment_ignored_by_quality_only_kinds(self):
        idx = WeightIndex(rn.WindowRecency(4))
        idx.push(2.0)
        idx.increment_degree(1)
        assert idx.weight_of(1) == 2.0

    def test_agepower_weights_follow_age_and_degree(self):
        idx = WeightIndex(rn.AgePower(1.0))
        idx.push(9.0, degree=1)
        idx.push(9.0, degree=2)
        # vertex 1 has age 1 -> 1/2; vertex 2 has age 0 -> 2
        assert idx.weight_of(1) == pytest.approx(0.5)
        assert idx.weight_of(2) == pytest.approx(2.0)
        assert idx.total() == pytest.approx(2.5)
        idx.increment_degree(1)
        assert idx.weight_of(1) == pytest.approx(1.0)
