"""Quick tour: build a grid, score the starting plan, take one step of each kernel.

Run with: python3 demos/01_grid_quickstart.py
"""

import numpy as np

from specchain import (
    balspecrecom_step,
    make_grid,
    plan_metrics,
    specrecom_step,
    treerecom_step,
)

# A 28x28 grid split into 4 horizontal bands. Every band has 196 vertices,
# so the starting plan is perfectly balanced and has 28 cut edges per seam.
g, p0 = make_grid(28, 4)
m0 = plan_metrics(g, p0)
print(f"grid: {g.num_vertices} vertices, {g.num_edges} edges, k={p0.k}")
print(f"start: cut_edges={m0.cut_edges} pop_dev={m0.pop_dev} "
      f"connected={m0.parts_connected}")

# Each kernel merges two adjacent parts and proposes a new 2-way split of the
# merged region. The proposal carries the replaced pair, the two new vertex
# sets, and diagnostics about how the split was found.
for name, step in [
    ("specrecom", specrecom_step),
    ("balspecrecom", balspecrecom_step),
    ("treerecom", lambda g, p, rng: treerecom_step(g, p, 0.05, rng)),
]:
    rng = np.random.default_rng(7)
    prop = step(g, p0, rng)
    d = prop.diagnostics
    if not prop.accepted:
        print(f"{name}: degenerate ({d.reason})")
        continue
    p1 = p0.replace_pair(g, prop.replaced, prop.sides)
    m1 = plan_metrics(g, p1)
    sizes = tuple(len(s) for s in prop.sides)
    print(f"{name}: merged parts {prop.replaced} ({d.super_size} vertices), "
          f"split {sizes[0]}/{sizes[1]} -> cut_edges={m1.cut_edges} "
          f"pop_dev={m1.pop_dev:.4f}")
