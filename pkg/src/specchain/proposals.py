"""Single-step recombination proposal kernels.

Each kernel merges two adjacent parts into a super-part and proposes a way to
split it back in two. A kernel never touches parts outside the selected pair
and never mutates its inputs; re-weighting for the spectral step happens on a
throwaway copy of the merged subgraph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .graph import Graph, Partition, induced_subgraph, is_connected
from .spectral import fiedler, sign_split


class ProposalStatus(Enum):
    CANDIDATE = "candidate"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class Diagnostics:
    """What happened inside one proposal, for records and debugging."""

    super_size: int
    reason: str | None = None
    threshold: float | None = None
    connected_candidates: int | None = None
    balance_edges: int | None = None
    self_loop: bool = False


@dataclass(frozen=True)
class Proposal:
    status: ProposalStatus
    replaced: tuple[int, int]
    sides: tuple[np.ndarray, np.ndarray] | None
    diagnostics: Diagnostics

    @property
    def accepted(self) -> bool:
        return self.status is ProposalStatus.CANDIDATE


def select_merge(g: Graph, p: Partition, rng: np.random.Generator):
    """Uniformly random cut edge and the (sorted) pair of parts it joins."""
    if len(p.cut_edges) == 0:
        raise ValueError("partition has no cut edges to merge across")
    eidx = int(p.cut_edges[rng.integers(len(p.cut_edges))])
    u, v = g.edges[eidx]
    a, b = int(p.assignment[u]), int(p.assignment[v])
    return eidx, (a, b) if a < b else (b, a)


def _merged_subgraph(g: Graph, p: Partition, a: int, b: int):
    verts = np.flatnonzero((p.assignment == a) | (p.assignment == b))
    return induced_subgraph(g, verts)


def _both_sides_connected(h: Graph, side1: np.ndarray, side2: np.ndarray) -> bool:
    """Check each side of a 2-way split of h induces a connected subgraph."""
    mark = np.zeros(h.num_vertices, dtype=bool)
    mark[side1] = True
    e = h.edges
    keep = mark[e[:, 0]] == mark[e[:, 1]]
    a = sp.coo_matrix(
        (np.ones(int(keep.sum()), dtype=np.int8), (e[keep, 0], e[keep, 1])),
        shape=(h.num_vertices, h.num_vertices),
    )
    return int(csgraph.connected_components(a, directed=False, return_labels=False)) == 2


def _overlay(h: Graph, rng: np.random.Generator, overlay_weights) -> Graph:
    if overlay_weights is None:
        overlay_weights = rng.uniform(1.0, 2.0, h.num_edges)
    return h.with_edge_weights(overlay_weights)


def specrecom_step(
    g: Graph,
    p: Partition,
    rng: np.random.Generator,
    *,
    tol: float = 1e-8,
    overlay_weights=None,
) -> Proposal:
    """Merge two adjacent parts, re-weight, split by Fiedler vector sign.

    The merged subgraph gets fresh edge weights drawn uniformly from [1, 2)
    (or `overlay_weights`, a test hook), its Fiedler vector is computed, and
    the super-part splits into the >= 0 and < 0 sides. The proposal is
    degenerate if either side is empty or disconnected.
    """
    _, (a, b) = select_merge(g, p, rng)
    h, old = _merged_subgraph(g, p, a, b)
    hw = _overlay(h, rng, overlay_weights)
    fr = fiedler(hw, tol=tol)
    s1, s2 = sign_split(hw, fr.vector)
    diag_args = dict(super_size=h.num_vertices)
    if len(s1) == 0 or len(s2) == 0:
        return Proposal(
            ProposalStatus.DEGENERATE, (a, b), None,
            Diagnostics(reason="empty side of sign split", **diag_args),
        )
    if not _both_sides_connected(h, s1, s2):
        return Proposal(
            ProposalStatus.DEGENERATE, (a, b), None,
            Diagnostics(reason="disconnected side of sign split", **diag_args),
        )
    return Proposal(
        ProposalStatus.CANDIDATE, (a, b), (old[s1], old[s2]), Diagnostics(**diag_args)
    )


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _prefix_component_counts(n, ranked_edges, edge_hi):
    """ncomp[j] = components among the first j ranked vertices, j = 1..n.

    `ranked_edges` holds (rank_u, rank_v) pairs sorted by their max rank
    (`edge_hi`); an edge becomes usable once both endpoints are placed.
    """
    uf = _UnionFind(n)
    ncomp = [0] * (n + 1)
    comps = 0
    ei = 0
    m = len(edge_hi)
    for j in range(n):
        comps += 1
        while ei < m and edge_hi[ei] == j:
            a, b = ranked_edges[ei]
            if uf.union(a, b):
                comps -= 1
            ei += 1
        ncomp[j + 1] = comps
    return ncomp


def _threshold_sweep(h: Graph, vector: np.ndarray):
    """Best balanced connected threshold split of h, or None.

    Considers every distinct entry t of the Fiedler vector as a threshold,
    keeps the splits where both the >= t and < t sides are connected and
    nonempty, and picks the one minimizing (|w(ge) - w(lt)|, cut edges in h,
    t), lexicographically. Returns (ge, lt, t, diff, cuts, n_connected).
    """
    n = h.num_vertices
    f = vector
    order = np.argsort(-f, kind="stable")  # descending entry, stable
    fs = f[order]
    rank_of = np.empty(n, dtype=np.int64)
    rank_of[order] = np.arange(n)

    # Candidate prefix lengths: strict drops in the sorted entries, so the
    # >= t side is exactly a prefix and both sides are nonempty.
    drops = np.flatnonzero(fs[:-1] > fs[1:]) + 1
    if len(drops) == 0:
        return None

    ru = rank_of[h.edges[:, 0]]
    rv = rank_of[h.edges[:, 1]]
    lo = np.minimum(ru, rv)
    hi = np.maximum(ru, rv)

    by_hi = np.argsort(hi, kind="stable")
    ncomp_ge = _prefix_component_counts(
        n, list(zip(lo[by_hi].tolist(), hi[by_hi].tolist())), hi[by_hi].tolist()
    )
    # Same scan from the other end: vertex at rank n-1-j joins j-th.
    lo_r = n - 1 - hi
    hi_r = n - 1 - lo
    by_hi_r = np.argsort(hi_r, kind="stable")
    ncomp_lt = _prefix_component_counts(
        n, list(zip(lo_r[by_hi_r].tolist(), hi_r[by_hi_r].tolist())), hi_r[by_hi_r].tolist()
    )

    prefix_w = np.cumsum(h.vertex_weights[order])
    total_w = prefix_w[-1]

    # cuts[j] = edges with exactly one endpoint among the first j vertices;
    # an edge with ranks (lo, hi) is cut for all j in lo+1 .. hi.
    dcut = np.zeros(n + 2, dtype=np.int64)
    np.add.at(dcut, lo + 1, 1)
    np.add.at(dcut, hi + 1, -1)
    cuts = np.cumsum(dcut)[: n + 1]

    ge_ok = np.array([ncomp_ge[j] == 1 for j in drops])
    lt_ok = np.array([ncomp_lt[n - j] == 1 for j in drops])
    good = drops[ge_ok & lt_ok]
    if len(good) == 0:
        return None

    diffs = np.abs(2.0 * prefix_w[good - 1] - total_w)
    cut_counts = cuts[good]
    thresholds = fs[good - 1]  # smallest entry on the >= side
    best = np.lexsort((thresholds, cut_counts, diffs))[0]
    j = int(good[best])
    ge = np.sort(order[:j])
    lt = np.sort(order[j:])
    return (
        ge,
        lt,
        float(thresholds[best]),
        float(diffs[best]),
        int(cut_counts[best]),
        int(len(good)),
    )


def balspecrecom_step(
    g: Graph,
    p: Partition,
    rng: np.random.Generator,
    *,
    tol: float = 1e-8,
    overlay_weights=None,
) -> Proposal:
    """Spectral merge-split that sweeps thresholds for the most even split.

    Like `specrecom_step` but instead of splitting at zero it evaluates every
    distinct Fiedler entry as a threshold and keeps the connected split with
    the smallest weight difference (ties: fewer cut edges in the super-part,
    then the smallest threshold). If no threshold yields a connected split,
    the original pair is returned unchanged as a self-loop candidate.
    """
    _, (a, b) = select_merge(g, p, rng)
    h, old = _merged_subgraph(g, p, a, b)
    hw = _overlay(h, rng, overlay_weights)
    fr = fiedler(hw, tol=tol)
    swept = _threshold_sweep(h, fr.vector)
    if swept is None:
        return Proposal(
            ProposalStatus.CANDIDATE,
            (a, b),
            (p.part_vertices(a), p.part_vertices(b)),
            Diagnostics(
                super_size=h.num_vertices, connected_candidates=0, self_loop=True
            ),
        )
    ge, lt, t, _, _, n_good = swept
    return Proposal(
        ProposalStatus.CANDIDATE,
        (a, b),
        (old[ge], old[lt]),
        Diagnostics(
            super_size=h.num_vertices, threshold=t, connected_candidates=n_good
        ),
    )


def wilson_spanning_tree(h: Graph, rng: np.random.Generator) -> list[int]:
    """Uniform spanning tree by loop-erased random walks.

    Returns a parent array rooted at vertex 0 (parent[0] == -1). Every
    spanning tree of h is returned with equal probability.
    """
    n = h.num_vertices
    if n == 0:
        raise ValueError("empty graph has no spanning tree")
    if not is_connected(h):
        # the walk below would never terminate across components
        raise ValueError("graph is disconnected; no spanning tree exists")
    adj = h.adjacency_lists()
    parent = [-2] * n
    parent[0] = -1
    nxt = [0] * n
    in_tree = [False] * n
    in_tree[0] = True
    chunk = min(4096, max(64, 8 * n))
    buf: list[float] = []
    bi = 0
    for start in range(1, n):
        if in_tree[start]:
            continue
        u = start
        while not in_tree[u]:
            nb = adj[u]
            if bi >= len(buf):
                buf = rng.random(chunk).tolist()
                bi = 0
            v = nb[int(buf[bi] * len(nb))]
            bi += 1
            nxt[u] = v
            u = v
        u = start
        while not in_tree[u]:
            in_tree[u] = True
            parent[u] = nxt[u]
            u = nxt[u]
    return parent


def _subtree_weights(parent: list[int], weights: np.ndarray) -> list[float]:
    """Total vertex weight under each vertex, leaves upward."""
    n = len(parent)
    pending = [0] * n
    for v in range(n):
        if parent[v] >= 0:
            pending[parent[v]] += 1
    totals = weights.tolist()
    stack = [v for v in range(n) if pending[v] == 0]
    while stack:
        v = stack.pop()
        q = parent[v]
        if q < 0:
            continue
        totals[q] += totals[v]
        pending[q] -= 1
        if pending[q] == 0:
            stack.append(q)
    return totals


def _subtree_vertices(parent: list[int], root: int) -> np.ndarray:
    """All vertices in the subtree hanging below `root` (inclusive)."""
    n = len(parent)
    children: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        if parent[v] >= 0:
            children[parent[v]].append(v)
    out = []
    stack = [root]
    while stack:
        v = stack.pop()
        out.append(v)
        stack.extend(children[v])
    return np.sort(np.asarray(out, dtype=np.int64))


def treerecom_step(
    g: Graph,
    p: Partition,
    eps: float,
    rng: np.random.Generator,
) -> Proposal:
    """Merge two adjacent parts and cut a random balance edge of a random tree.

    Draws a uniform spanning tree of the merged subgraph, finds the tree edges
    whose removal leaves both components within the plan-wide weight tolerance
    eps (every other part is untouched, so only the two new parts are
    checked), and cuts one uniformly at random. Degenerate when the tree has
    no such edge.
    """
    _, (a, b) = select_merge(g, p, rng)
    h, old = _merged_subgraph(g, p, a, b)
    parent = wilson_spanning_tree(h, rng)
    below = _subtree_weights(parent, h.vertex_weights)
    total = g.total_vertex_weight
    k = p.k
    merged_w = float(h.vertex_weights.sum())
    candidates = [
        v
        for v in range(h.num_vertices)
        if parent[v] >= 0
        and abs(k * below[v] / total - 1.0) <= eps
        and abs(k * (merged_w - below[v]) / total - 1.0) <= eps
    ]
    if not candidates:
        return Proposal(
            ProposalStatus.DEGENERATE, (a, b), None,
            Diagnostics(
                super_size=h.num_vertices, reason="no balance edge in tree",
                balance_edges=0,
            ),
        )
    chosen = candidates[int(rng.integers(len(candidates)))]
    side1 = _subtree_vertices(parent, chosen)
    mask = np.ones(h.num_vertices, dtype=bool)
    mask[side1] = False
    side2 = np.flatnonzero(mask)
    return Proposal(
        ProposalStatus.CANDIDATE,
        (a, b),
        (old[side1], old[side2]),
        Diagnostics(super_size=h.num_vertices, balance_edges=len(candidates)),
    )
