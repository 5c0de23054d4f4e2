"""Compare the three chain kernels on a grid: compactness vs. balance.

Runs a short chain per algorithm from the same row-band start and prints how
cut edges and population deviation evolve. The spectral kernels drift toward
fewer cut edges than the start; the tree kernel holds balance within eps but
pays for it with more cut edges. Saves a trajectory plot when matplotlib is
available.

Run with: python3 demos/03_chain_comparison.py
"""

import numpy as np

from specchain import ChainConfig, make_grid, run_chain

SIDE, K, STEPS, SEED = 28, 4, 150, 11

g, p0 = make_grid(SIDE, K)
start_cut = len(p0.cut_edges)
print(f"{SIDE}x{SIDE} grid, k={K}, start at {start_cut} cut edges\n")

trajectories = {}
for algo in ("specrecom", "balspecrecom", "treerecom"):
    cfg = ChainConfig(algorithm=algo, steps=STEPS, k=K, master_seed=SEED,
                      eps=0.05)
    final, records = run_chain(g, p0, cfg)
    cuts = np.array([r.cut_edge_count for r in records])
    devs = np.array([r.pop_dev for r in records])
    attempts = sum(r.attempts_used for r in records)
    trajectories[algo] = (cuts, devs)
    print(f"{algo:>13}: final cut={cuts[-1]:4d} (min {cuts.min()}), "
          f"final pop_dev={devs[-1]:.4f} (max {devs.max():.4f}), "
          f"{attempts} proposals for {STEPS} accepted steps")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not installed; skipping the plot")
else:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    for algo, (cuts, devs) in trajectories.items():
        ax1.plot(cuts, label=algo)
        ax2.plot(devs, label=algo)
    ax1.axhline(start_cut, color="gray", ls="--", lw=0.8, label="start")
    ax1.set_xlabel("step")
    ax1.set_ylabel("cut edges")
    ax2.set_xlabel("step")
    ax2.set_ylabel("population deviation")
    ax2.set_yscale("symlog", linthresh=1e-3)
    ax1.legend()
    fig.tight_layout()
    fig.savefig("chain_comparison.png", dpi=120)
    print("\nwrote chain_comparison.png")
