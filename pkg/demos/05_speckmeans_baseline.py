"""One-shot spectral k-means as a baseline for the chain kernels.

Embeds vertices with the first k-1 nontrivial Laplacian eigenvectors, runs
Lloyd's algorithm, and scores the resulting plan. A single deterministic
partition, useful as a compactness yardstick: no balance guarantee and no
connectivity guarantee, but typically few cut edges.

Run with: python3 demos/05_speckmeans_baseline.py
"""

from specchain import ChainConfig, make_grid, plan_metrics, run_chain, speckmeans

SIDE, K = 28, 4
g, p0 = make_grid(SIDE, K)

base = speckmeans(g, K, seed=0)
mb = plan_metrics(g, base)
sizes = sorted(len(v) for v in (base.part_vertices(i) for i in range(K)))
print(f"speckmeans k={K}: cut_edges={mb.cut_edges} pop_dev={mb.pop_dev:.4f} "
      f"connected={mb.parts_connected} part sizes={sizes}")

# Compare against a short balanced-spectral chain from the row-band start.
cfg = ChainConfig(algorithm="balspecrecom", steps=120, k=K, master_seed=5)
final, _ = run_chain(g, p0, cfg)
mc = plan_metrics(g, final)
print(f"balspecrecom after {cfg.steps} steps: cut_edges={mc.cut_edges} "
      f"pop_dev={mc.pop_dev:.4f} connected={mc.parts_connected}")
print(f"(row-band start had {len(p0.cut_edges)} cut edges, pop_dev=0)")
