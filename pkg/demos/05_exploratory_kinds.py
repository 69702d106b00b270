"""Exploratory attractiveness families beyond the two analyzed kinds.

general:<a1><a2><a3>:<tau> multiplies optional quality, degree, and
exponential-age factors; agepower:<exponent> is degree times a power of
(age+1). No closed-form predictions attach to these, so this is purely a
comparison of empirical degree tails. Note general:110 (quality times
degree, no aging) is the classic fitness model and general:010 is plain
degree-proportional attachment.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import recnet as rn

N, M, SCALE = 30_000, 2, 300
labels = [
    "window",             # analyzed: quality while alive
    "exp",                # analyzed: quality with exponential aging
    "general:010:1",      # degree only: preferential attachment
    "general:110:1",      # quality x degree: fitness model
    "agepower:1.5",       # degree x (age+1)^-1.5
]

fig, ax = plt.subplots(figsize=(6.5, 4.5))
for label in labels:
    params = rn.ModelParams(
        n=N, m=M, recency_scale=SCALE,
        pareto=rn.ParetoParams(gamma=2.5, a=1.0),
        kind=rn.parse_kind(label, SCALE),
        seed=rn.SeedSpec(3),
    )
    graph = rn.generate(params)
    hist = rn.degree_histogram(graph, "total")
    ds, cs = hist.as_arrays()
    keep = cs > 0
    ax.loglog(ds[keep], cs[keep] / N, ".", ms=4, label=label)
    top = ds.max()
    gaps = graph.sources.astype(np.int64) - graph.targets
    print(f"{label:15s} max degree {top:6d}   median edge gap {int(np.median(gaps)):6d}")

ax.set_xlabel("total degree d")
ax.set_ylabel("fraction of vertices")
ax.set_title("degree distributions across attractiveness kinds")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig("/tmp/demo_exploratory_kinds.png", dpi=120)
print("wrote /tmp/demo_exploratory_kinds.png")
