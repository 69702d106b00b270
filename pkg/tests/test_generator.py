from collections import Counter

import numpy as np
import pytest

import recnet as rn
from conftest import make_params


class TestBaseCases:
    def test_two_vertex_graph(self):
        g = rn.generate(make_params(2, 5, 3))
        assert g.edge_array().tolist() == [[2, 1]]
        assert g.qualities.shape == (2,)

    def test_three_vertices_m2(self):
        g = rn.generate(make_params(3, 2, 3))
        assert g.n_edges == 3
        assert g.sources.tolist() == [2, 3, 3]
        assert set(g.targets[1:].tolist()) <= {1, 2}

    def test_five_vertices_m3_counts(self):
        g = rn.generate(make_params(5, 3, 2))
        assert g.n_edges == 1 + 3 * 3
        out = rn.out_degrees(g)
        assert out[2:].tolist() == [3, 3, 3]


@pytest.mark.parametrize("kind", ["window", "exp", "general:111:20", "agepower:1.2"])
class TestStructure:
    def test_structure_invariants(self, kind):
        p = make_params(600, 3, 40, kind, seed=21)
        g = rn.generate(p)
        assert g.n_edges == 1 + 3 * 598
        out = rn.out_degrees(g)
        assert out[0] == 0 and out[1] == 1  # seed edge only
        assert np.all(out[2:] == 3)
        assert np.all(g.sources != g.targets)
        assert np.all((g.targets >= 1) & (g.targets < g.sources))
        total = rn.total_degrees(g)
        assert total.sum() == 2 * g.n_edges
        if kind == "window":
            assert np.max(g.sources.astype(np.int64) - g.targets) <= 40

    def test_deterministic(self, kind):
        p = make_params(200, 2, 25, kind, seed=33)
        g1, g2 = rn.generate(p), rn.generate(p)
        assert np.array_equal(g1.targets, g2.targets)
        assert np.array_equal(g1.qualities, g2.qualities)


class TestNaiveOracle:
    @pytest.mark.parametrize(
        "kind,n,scale",
        [
            ("window", 1500, 60),
            ("exp", 1200, 150),
            ("general:110:35", 400, 35),
            ("general:101:25", 400, 25),
            ("agepower:0.8", 400, 10),
        ],
    )
    def test_bitwise_equivalence(self, kind, n, scale):
        for seed in (1, 2, 3):
            p = make_params(n, 2, scale, kind, seed=seed, trace=True)
            fast = rn.generate(p)
            naive = rn.generate_naive(p)
            assert np.array_equal(fast.sources, naive.sources)
            assert np.array_equal(fast.targets, naive.targets)
            assert np.array_equal(fast.qualities, naive.qualities)
            assert np.allclose(fast.weight_trace, naive.weight_trace, rtol=1e-9)

    def test_two_vertex_naive(self):
        g = rn.generate_naive(make_params(2, 4, 2))
        assert g.edge_array().tolist() == [[2, 1]]

    def test_cap_rejected(self):
        with pytest.raises(ValueError):
            rn.generate_naive(make_params(20_001, 1, 5))
        rn.generate_naive(make_params(101, 1, 5), cap=101)
        with pytest.raises(ValueError):
            rn.generate_naive(make_params(102, 1, 5), cap=101)


class TestParamsValidation:
    def test_bad_sizes(self):
        with pytest.raises(ValueError):
            make_params(1, 1, 1)
        with pytest.raises(ValueError):
            make_params(5, 0, 1)
        with pytest.raises(ValueError):
            make_params(5, 1, 0)

    def test_kind_scale_must_match(self):
        with pytest.raises(ValueError):
            rn.ModelParams(
                n=10, m=1, recency_scale=5,
                pareto=rn.ParetoParams(2.5, 1.0),
                kind=rn.WindowRecency(scale=4),
                seed=rn.SeedSpec(1, 0),
            )


class TestInDegreeAtDeath:
    def test_matches_edge_scan(self):
        p = make_params(900, 2, 50, "window", seed=44)
        g = rn.generate(p)
        tally = Counter(g.targets.tolist())
        for v in (50, 333, 851):
            assert rn.in_degree_at_death(g, v) == tally.get(v, 0)

    def test_zero_for_unpopular_vertex(self):
        p = make_params(900, 1, 30, "window", seed=45)
        g = rn.generate(p)
        hit = set(g.targets.tolist())
        lonely = next(v for v in range(30, 872) if v not in hit)
        assert rn.in_degree_at_death(g, lonely) == 0

    def test_range_enforced(self):
        g = rn.generate(make_params(200, 1, 40, "window", seed=4))
        with pytest.raises(ValueError):
            rn.in_degree_at_death(g, 39)
        with pytest.raises(ValueError):
            rn.in_degree_at_death(g, 162)
        rn.in_degree_at_death(g, 40)
        rn.in_degree_at_death(g, 161)

    def test_window_only(self):
        g = rn.generate(make_params(200, 1, 40, "exp", seed=4))
        with pytest.raises(ValueError):
            rn.in_degree_at_death(g, 100)


class TestWeightTrace:
    def test_trace_length_and_head(self):
        p = make_params(50, 2, 10, "window", seed=6, trace=True)
        g = rn.generate(p)
        assert g.weight_trace.shape == (49,)
        # before any eviction the total is the plain quality sum
        cums = np.cumsum(g.qualities)
        assert np.allclose(g.weight_trace[:10], cums[:10], rtol=1e-12)

    def test_trace_absent_by_default(self):
        g = rn.generate(make_params(50, 2, 10, "window", seed=6))
        assert g.weight_trace is None

    def test_two_vertex_trace(self):
        g = rn.generate(make_params(2, 1, 3, "exp", seed=1, trace=True))
        assert g.weight_trace.shape == (1,)
        assert g.weight_trace[0] == pytest.approx(g.qualities[0], rel=1e-12)


class TestEdgeListFiles:
    def test_header_and_round_trip_precision(self, tmp_path):
        p = make_params(40, 2, 7, "exp", gamma=2.25, a=0.5, seed=77, trace=True)
        g = rn.generate(p)
        edge_path = tmp_path / "g.edges"
        rn.write_edge_list(g, edge_path)
        lines = edge_path.read_text().splitlines()
        assert lines[0] == "# recnet v1 n=40 m=2 N=7 gamma=2.25 a=0.5 kind=exp seed=77:0"
        assert len(lines) == 1 + g.n_edges
        assert lines[1] == "2 1"
        q_path = tmp_path / "g.q"
        rn.write_qualities(g, q_path)
        back = np.array([float(x) for x in q_path.read_text().split()])
        assert np.array_equal(back, g.qualities)
        t_path = tmp_path / "g.trace"
        rn.write_trace(g, t_path)
        back = np.array([float(x) for x in t_path.read_text().split()])
        assert np.array_equal(back, g.weight_trace)
