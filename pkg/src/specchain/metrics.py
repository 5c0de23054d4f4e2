"""Plan-level scores: cut edges, weight deviation, connectivity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, Partition, is_connected_partition


@dataclass(frozen=True)
class PlanMetrics:
    cut_edges: int
    pop_dev: float
    parts_connected: bool


def cut_edges(g: Graph, p: Partition) -> int:
    """Number of edges whose endpoints lie in different parts."""
    return len(p.cut_edges)


def pop_dev(g: Graph, p: Partition) -> float:
    """Worst relative deviation of any part weight from the even split.

    max_i |k * w(part_i) / w(V) - 1|; zero means perfectly even.
    """
    total = g.total_vertex_weight
    if total <= 0:
        raise ValueError("pop_dev is undefined for zero total vertex weight")
    return float(np.abs(p.k * p.part_weights / total - 1.0).max())


def plan_metrics(g: Graph, p: Partition) -> PlanMetrics:
    return PlanMetrics(
        cut_edges=cut_edges(g, p),
        pop_dev=pop_dev(g, p),
        parts_connected=is_connected_partition(g, p),
    )
