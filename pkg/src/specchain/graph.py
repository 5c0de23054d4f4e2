"""Vertex-weighted undirected graphs and partitions of their vertex sets.

Vertices are dense integer indices 0..n-1; external string ids are kept for
file round-trips. Edges are stored once with u < v, and positive edge weights
live in a parallel array so a graph with re-weighted edges can share all the
structural caches of the original.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .errors import GraphFormatError


class Graph:
    """Immutable undirected graph with weights on vertices and edges."""

    __slots__ = ("ids", "vertex_weights", "edges", "edge_weights", "_cache")

    def __init__(self, ids, vertex_weights, edges, edge_weights):
        ids = [str(i) for i in ids]
        n = len(ids)
        if len(set(ids)) != n:
            raise GraphFormatError("vertex ids are not unique")
        vw = np.ascontiguousarray(vertex_weights, dtype=np.float64)
        if vw.shape != (n,):
            raise GraphFormatError("vertex_weights length does not match ids")
        if not np.all(np.isfinite(vw)) or np.any(vw < 0):
            raise GraphFormatError("vertex weights must be finite and >= 0")

        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        ew = np.ascontiguousarray(edge_weights, dtype=np.float64)
        if ew.shape != (len(e),):
            raise GraphFormatError("edge_weights length does not match edges")
        if len(e):
            if e.min() < 0 or e.max() >= n:
                raise GraphFormatError("edge endpoint out of range")
            if np.any(e[:, 0] == e[:, 1]):
                bad = int(np.flatnonzero(e[:, 0] == e[:, 1])[0])
                raise GraphFormatError(f"self-loop at edge {bad} ({ids[e[bad, 0]]})")
            lo = np.minimum(e[:, 0], e[:, 1])
            hi = np.maximum(e[:, 0], e[:, 1])
            e = np.column_stack([lo, hi])
            key = lo * n + hi
            if len(np.unique(key)) != len(e):
                order = np.argsort(key, kind="stable")
                dup = int(order[np.flatnonzero(np.diff(key[order]) == 0)[0] + 1])
                raise GraphFormatError(
                    f"duplicate edge ({ids[e[dup, 0]]}, {ids[e[dup, 1]]})"
                )
        if not np.all(np.isfinite(ew)) or np.any(ew <= 0):
            raise GraphFormatError("edge weights must be finite and > 0")

        self.ids = ids
        self.vertex_weights = vw
        self.edges = e
        self.edge_weights = ew
        self._cache = {}

    @classmethod
    def _trusted(cls, ids, vertex_weights, edges, edge_weights, cache=None):
        """Skip validation for graphs built from already-checked arrays."""
        g = object.__new__(cls)
        g.ids = ids
        g.vertex_weights = vertex_weights
        g.edges = edges
        g.edge_weights = edge_weights
        g._cache = cache if cache is not None else {}
        return g

    @property
    def num_vertices(self) -> int:
        return len(self.ids)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def total_vertex_weight(self) -> float:
        return float(self.vertex_weights.sum())

    def with_edge_weights(self, edge_weights) -> "Graph":
        """Copy of this graph with different edge weights, sharing structure."""
        ew = np.ascontiguousarray(edge_weights, dtype=np.float64)
        if ew.shape != (self.num_edges,):
            raise ValueError("edge_weights length does not match edges")
        if not np.all(np.isfinite(ew)) or np.any(ew <= 0):
            raise ValueError("edge weights must be finite and > 0")
        return Graph._trusted(self.ids, self.vertex_weights, self.edges, ew, self._cache)

    # -- lazily built structural caches ------------------------------------

    def _structure(self):
        """CSR adjacency over edge structure: (indptr, neighbor, edge_id)."""
        got = self._cache.get("structure")
        if got is None:
            n, e = self.num_vertices, self.edges
            heads = np.concatenate([e[:, 0], e[:, 1]])
            tails = np.concatenate([e[:, 1], e[:, 0]])
            eids = np.concatenate([np.arange(len(e))] * 2)
            order = np.argsort(heads, kind="stable")
            indptr = np.zeros(n + 1, dtype=np.int64)
            np.cumsum(np.bincount(heads, minlength=n), out=indptr[1:])
            got = (indptr, tails[order], eids[order])
            self._cache["structure"] = got
        return got

    def adjacency_lists(self):
        """Neighbor lists as plain Python lists (fast for walk loops)."""
        got = self._cache.get("adj_lists")
        if got is None:
            indptr, nbrs, _ = self._structure()
            flat = nbrs.tolist()
            bounds = indptr.tolist()
            got = [flat[bounds[i]:bounds[i + 1]] for i in range(self.num_vertices)]
            self._cache["adj_lists"] = got
        return got

    def structure_csr(self) -> sp.csr_matrix:
        """Unweighted adjacency as a scipy CSR matrix."""
        got = self._cache.get("structure_csr")
        if got is None:
            n = self.num_vertices
            indptr, nbrs, _ = self._structure()
            got = sp.csr_matrix(
                (np.ones(len(nbrs), dtype=np.int8), nbrs, indptr), shape=(n, n)
            )
            self._cache["structure_csr"] = got
        return got

    def neighbors(self, v: int) -> np.ndarray:
        indptr, nbrs, _ = self._structure()
        return nbrs[indptr[v]:indptr[v + 1]]

    def __repr__(self):
        return f"Graph(n={self.num_vertices}, m={self.num_edges})"


class Partition:
    """Assignment of every vertex to one of k nonempty parts.

    Holds no reference to its graph, so values can move freely between
    processes; the weight and cut-edge caches are computed at construction.
    """

    __slots__ = ("assignment", "k", "part_weights", "cut_edges")

    def __init__(self, assignment, k, part_weights, cut_edges):
        self.assignment = assignment
        self.k = k
        self.part_weights = part_weights
        self.cut_edges = cut_edges

    @classmethod
    def from_assignment(cls, g: Graph, assignment, k: int | None = None) -> "Partition":
        asg = np.ascontiguousarray(assignment, dtype=np.int64)
        if asg.shape != (g.num_vertices,):
            raise ValueError("assignment length does not match graph")
        if k is None:
            k = int(asg.max()) + 1 if len(asg) else 0
        if len(asg) and (asg.min() < 0 or asg.max() >= k):
            raise ValueError("part labels must lie in 0..k-1")
        counts = np.bincount(asg, minlength=k)
        if np.any(counts == 0):
            empty = int(np.flatnonzero(counts == 0)[0])
            raise ValueError(f"part {empty} is empty")
        part_weights = np.bincount(asg, weights=g.vertex_weights, minlength=k)
        e = g.edges
        cut = np.flatnonzero(asg[e[:, 0]] != asg[e[:, 1]]) if len(e) else np.empty(0, np.int64)
        return cls(asg, k, part_weights, cut)

    def part_vertices(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == i)

    def replace_pair(self, g: Graph, parts: tuple[int, int], sides) -> "Partition":
        """New partition where the two given parts are replaced by `sides`."""
        a, b = parts
        lo, hi = (a, b) if a < b else (b, a)
        asg = self.assignment.copy()
        asg[sides[0]] = lo
        asg[sides[1]] = hi
        return Partition.from_assignment(g, asg, self.k)

    def __repr__(self):
        return f"Partition(k={self.k}, n={len(self.assignment)})"


def make_grid(side: int, k: int) -> tuple[Graph, Partition]:
    """side x side grid with unit weights, split into k horizontal bands.

    Row r goes to part floor(r * k / side), so parts are contiguous bands of
    rows and all parts have equal weight whenever k divides side.
    """
    if side < 1:
        raise ValueError("side must be >= 1")
    if not 1 <= k <= side:
        raise ValueError(f"k must lie in 1..side, got k={k} side={side}")
    n = side * side
    ids = [f"{r},{c}" for r in range(side) for c in range(side)]
    idx = np.arange(n).reshape(side, side)
    right = np.column_stack([idx[:, :-1].ravel(), idx[:, 1:].ravel()])
    down = np.column_stack([idx[:-1, :].ravel(), idx[1:, :].ravel()])
    edges = np.vstack([right, down])
    g = Graph(ids, np.ones(n), edges, np.ones(len(edges)))
    rows = np.repeat(np.arange(side), side)
    assignment = (rows * k) // side
    return g, Partition.from_assignment(g, assignment, k)


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, np.ndarray]:
    """Subgraph on the given vertex set, plus the new-to-old index map.

    Vertex and edge weights are carried over; the second return value maps
    each new index back to its index in `g`.
    """
    old = np.unique(np.asarray(vertices, dtype=np.int64))
    if len(old) and (old[0] < 0 or old[-1] >= g.num_vertices):
        raise ValueError("vertex index out of range")
    new_of_old = np.full(g.num_vertices, -1, dtype=np.int64)
    new_of_old[old] = np.arange(len(old))
    e = g.edges
    keep = np.flatnonzero((new_of_old[e[:, 0]] >= 0) & (new_of_old[e[:, 1]] >= 0))
    sub_edges = new_of_old[e[keep]]
    ids = [g.ids[i] for i in old]
    h = Graph._trusted(ids, g.vertex_weights[old], sub_edges, g.edge_weights[keep])
    return h, old


def is_connected(g: Graph) -> bool:
    if g.num_vertices <= 1:
        return True
    ncomp = csgraph.connected_components(g.structure_csr(), directed=False, return_labels=False)
    return int(ncomp) == 1


def _intra_part_components(g: Graph, assignment: np.ndarray) -> int:
    """Component count after removing every edge that crosses parts."""
    e = g.edges
    keep = assignment[e[:, 0]] == assignment[e[:, 1]]
    u = e[keep, 0]
    v = e[keep, 1]
    a = sp.coo_matrix(
        (np.ones(len(u), dtype=np.int8), (u, v)),
        shape=(g.num_vertices, g.num_vertices),
    )
    return int(csgraph.connected_components(a, directed=False, return_labels=False))


def is_connected_partition(g: Graph, p: Partition) -> bool:
    """True when every part induces a connected subgraph."""
    if g.num_vertices == 0:
        return True
    return _intra_part_components(g, p.assignment) == p.k


def verify_partition(g: Graph, p: Partition) -> None:
    """Recompute the partition caches and raise ValueError on any mismatch."""
    fresh = Partition.from_assignment(g, p.assignment, p.k)
    if not np.array_equal(fresh.assignment, p.assignment):
        raise ValueError("assignment array was mutated")
    if not np.allclose(fresh.part_weights, p.part_weights, rtol=0, atol=0):
        raise ValueError("part_weights cache is stale")
    if not np.array_equal(fresh.cut_edges, p.cut_edges):
        raise ValueError("cut_edges cache is stale")
