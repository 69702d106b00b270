"""Total attractiveness over time and its concentration around N * E[quality].

The sampling normalizer fluctuates around scale * mean_quality once the
process has run for a while (immediately for the window kind, after roughly
N*log(N) steps for the exponential kind, which starts from a single vertex
and has to fill its effective window first).
"""

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import recnet as rn

SCALE, N, GAMMA = 500, 100_000, 3.0

fig, axes = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
for ax, kind in zip(axes, ("window", "exp")):
    params = rn.ModelParams(
        n=N, m=2, recency_scale=SCALE,
        pareto=rn.ParetoParams(gamma=GAMMA, a=1.0),
        kind=rn.parse_kind(kind, SCALE),
        seed=rn.SeedSpec(5),
        record_weight_trace=True,
    )
    graph = rn.generate(params)
    reference = SCALE * rn.pareto_mean(params.pareto)
    warmup = SCALE * math.log(SCALE)
    max_abs, max_rel = rn.weight_deviation(graph.weight_trace, SCALE,
                                           rn.pareto_mean(params.pareto), warmup)
    print(f"{kind:6s}: max |Q(t) - {reference:.0f}| = {max_abs:7.1f} "
          f"({100 * max_rel:.1f}% relative) after warmup {warmup:.0f}")

    steps = np.arange(2, N + 1)
    ax.plot(steps[::20], graph.weight_trace[::20], lw=0.6, label="Q(t)")
    ax.axhline(reference, color="k", lw=1, label="N * E[quality]")
    ax.axhspan(reference * 0.8, reference * 1.2, color="gray", alpha=0.2,
               label="20% band")
    ax.axvline(warmup, color="C3", ls=":", lw=1, label="warmup N ln N")
    ax.set_ylabel(f"{kind} Q(t)")
    ax.legend(loc="lower right", fontsize=8)
axes[1].set_xlabel("step t")
fig.suptitle(f"total attractiveness, gamma={GAMMA}, N={SCALE}")
fig.tight_layout()
fig.savefig("/tmp/demo_weight_trace.png", dpi=120)
print("wrote /tmp/demo_weight_trace.png")
