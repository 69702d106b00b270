import pytest

import recnet as rn


def make_params(n, m, scale, kind="window", gamma=2.5, a=1.0, seed=7, stream=0, trace=False):
    return rn.ModelParams(
        n=n,
        m=m,
        recency_scale=scale,
        pareto=rn.ParetoParams(gamma=gamma, a=a),
        kind=rn.parse_kind(kind, scale),
        seed=rn.SeedSpec(seed, stream),
        record_weight_trace=trace,
    )


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile the generation kernels once so timed tests measure the work
    rn.generate(make_params(8, 1, 2, "window", seed=0))
    rn.generate(make_params(8, 1, 2, "exp", seed=0))
