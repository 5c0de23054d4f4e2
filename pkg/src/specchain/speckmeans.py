"""Spectral k-means baseline: cluster vertices in the Laplacian embedding.

Connectivity-blind by design; parts can come out disconnected. Useful as a
deterministic point of comparison for the chain samplers.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph, Partition
from .spectral import spectral_embedding

LLOYD_MAX_ITER = 500


def _farthest_first_centers(points: np.ndarray, k: int, rng: np.random.Generator):
    """Seed point plus k-1 greedy farthest points (lowest index on ties)."""
    n = len(points)
    centers = np.empty((k, points.shape[1]))
    centers[0] = points[int(rng.integers(n))]
    d2 = ((points - centers[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        centers[j] = points[int(np.argmax(d2))]
        d2 = np.minimum(d2, ((points - centers[j]) ** 2).sum(axis=1))
    return centers


def _assign(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    d2 = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    return np.argmin(d2, axis=1)


def speckmeans(g: Graph, k: int, seed: int) -> Partition:
    """Partition g into k parts by Lloyd's k-means on the spectral embedding.

    Deterministic for a given seed: the seed only picks the first
    farthest-first center. Empty clusters are re-seeded at the point farthest
    from its current centroid. Raises if Lloyd fails to converge within
    LLOYD_MAX_ITER rounds.
    """
    points = spectral_embedding(g, k)
    n = len(points)
    rng = np.random.default_rng(seed)
    centers = _farthest_first_centers(points, k, rng)
    labels = np.full(n, -1, dtype=np.int64)
    for _ in range(LLOYD_MAX_ITER):
        new_labels = _assign(points, centers)
        for _ in range(2 * k):
            counts = np.bincount(new_labels, minlength=k)
            empty = np.flatnonzero(counts == 0)
            if len(empty) == 0:
                break
            dist_to_own = ((points - centers[new_labels]) ** 2).sum(axis=1)
            centers[empty[0]] = points[int(np.argmax(dist_to_own))]
            new_labels = _assign(points, centers)
        else:
            raise RuntimeError("could not re-seed empty clusters")
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for j in range(k):
            centers[j] = points[labels == j].mean(axis=0)
    else:
        raise RuntimeError(f"k-means did not converge in {LLOYD_MAX_ITER} rounds")
    return Partition.from_assignment(g, labels, k)
