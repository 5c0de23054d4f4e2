"""Plan ensembles two ways: independent chains vs. one sub-sampled chain.

Independent mode restarts from the seed plan with per-chain derived seeds;
sub-sampling runs one long chain and keeps every N-th state. Both yield a
distribution of plans whose cut-edge histogram characterizes the kernel.

Run with: python3 demos/04_ensemble_histograms.py
"""

import numpy as np

from specchain import ChainConfig, make_grid, pop_dev, run_ensemble

SIDE, K = 28, 4
g, p0 = make_grid(SIDE, K)
cfg = ChainConfig(algorithm="balspecrecom", steps=60, k=K, master_seed=3)

ind = run_ensemble(g, p0, cfg, count=24, mode="independent")
sub = run_ensemble(g, p0, cfg, count=24, mode="subsample")

for name, res in [("independent", ind), ("subsample", sub)]:
    cuts = np.array([len(p.cut_edges) for p in res.plans])
    devs = np.array([pop_dev(g, p) for p in res.plans])
    print(f"{name:>12}: {len(res.plans)} plans, cut edges "
          f"min/median/max = {cuts.min()}/{int(np.median(cuts))}/{cuts.max()}, "
          f"median pop_dev = {np.median(devs):.4f}")

# plan_rows() is the same summary the CLI writes to aggregate.csv
rows = ind.plan_rows()
print("\nfirst independent plans (index, cut_edges, pop_dev, seed, attempts):")
for row in rows[:5]:
    print("   ", row)

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not installed; skipping the plot")
else:
    fig, ax = plt.subplots(figsize=(6, 4))
    bins = np.arange(
        min(len(p.cut_edges) for p in ind.plans + sub.plans) - 2,
        max(len(p.cut_edges) for p in ind.plans + sub.plans) + 3, 2)
    for name, res in [("independent", ind), ("subsample", sub)]:
        ax.hist([len(p.cut_edges) for p in res.plans], bins=bins,
                alpha=0.6, label=name)
    ax.axvline(len(p0.cut_edges), color="gray", ls="--", lw=0.8)
    ax.set_xlabel("cut edges in final plan")
    ax.set_ylabel("plans")
    ax.legend()
    fig.tight_layout()
    fig.savefig("ensemble_histograms.png", dpi=120)
    print("\nwrote ensemble_histograms.png")
