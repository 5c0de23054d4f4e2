"""Graph Laplacians, Fiedler vectors, and spectral splits.

Everything here is a pure function of its inputs: solves use a fixed internal
starting vector, so repeated calls on the same graph return identical arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import SolverError
from .graph import Graph, is_connected

# Below this size a dense LAPACK solve beats building the shift-invert
# factorization; above it ARPACK wins by an order of magnitude.
DENSE_CUTOFF = 64

# If an iterative solve misses the residual target, retry densely up to here.
_DENSE_FALLBACK_LIMIT = 4096

_V0_SEED = 0x5EED_F1ED


@dataclass(frozen=True)
class LaplacianView:
    """Un-normalized weighted Laplacian L = D - A of a graph."""

    matrix: sp.csr_matrix

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()


@dataclass(frozen=True)
class FiedlerResult:
    """Second-smallest Laplacian eigenpair with its verified residual."""

    lambda2: float
    vector: np.ndarray
    residual: float


def laplacian(g: Graph) -> LaplacianView:
    n = g.num_vertices
    e, w = g.edges, g.edge_weights
    rows = np.concatenate([e[:, 0], e[:, 1], np.arange(n)])
    cols = np.concatenate([e[:, 1], e[:, 0], np.arange(n)])
    deg = np.zeros(n)
    np.add.at(deg, e[:, 0], w)
    np.add.at(deg, e[:, 1], w)
    data = np.concatenate([-w, -w, deg])
    return LaplacianView(sp.csr_matrix((data, (rows, cols)), shape=(n, n)))


def _sign_normalize(vec: np.ndarray) -> np.ndarray:
    """Flip sign so the largest-magnitude entry (lowest index on ties) is > 0."""
    anchor = int(np.argmax(np.abs(vec)))
    return -vec if vec[anchor] < 0 else vec


def _postprocess(L: sp.csr_matrix, vec: np.ndarray) -> tuple[float, np.ndarray, float]:
    """Project out the constant mode, renormalize, and measure the residual."""
    v = vec - vec.mean()
    norm = np.linalg.norm(v)
    if norm == 0:
        raise SolverError("eigenvector collapsed onto the constant mode")
    v = v / norm
    lam = float(v @ (L @ v))
    residual = float(np.linalg.norm(L @ v - lam * v))
    return lam, _sign_normalize(v), residual


def _eig_dense(L: sp.csr_matrix, count: int) -> np.ndarray:
    vals, vecs = scipy.linalg.eigh(L.toarray(), subset_by_index=[0, count - 1])
    return vecs[:, np.argsort(vals)]


def _eig_sparse(L: sp.csr_matrix, count: int, maxiter: int) -> np.ndarray:
    n = L.shape[0]
    sigma = -1e-3 * float(L.diagonal().max())
    v0 = np.random.default_rng(_V0_SEED).standard_normal(n)
    vals, vecs = spla.eigsh(
        L.tocsc(), k=count, sigma=sigma, which="LM", v0=v0, maxiter=maxiter
    )
    return vecs[:, np.argsort(vals)]


def _low_eigenvectors(L: sp.csr_matrix, count: int, tol: float) -> list:
    """Eigenvectors for the `count` smallest eigenvalues, residual-checked.

    Returns a list of (lambda, vector, residual) triples for indices
    1..count-1 (the constant mode at index 0 is dropped), each projected,
    unit-norm, and sign-normalized.
    """
    n = L.shape[0]
    dense = n <= DENSE_CUTOFF or count >= n - 1
    if dense:
        vecs = _eig_dense(L, count)
    else:
        try:
            vecs = _eig_sparse(L, count, maxiter=10 * n)
        except (spla.ArpackNoConvergence, RuntimeError):
            vecs = None
        if vecs is None or _worst_residual(L, vecs, tol) > tol:
            if n > _DENSE_FALLBACK_LIMIT:
                raise SolverError(
                    f"iterative eigensolve missed tol={tol} on n={n} and the "
                    "problem is too large for the dense fallback"
                )
            vecs = _eig_dense(L, count)
    out = []
    for j in range(1, count):
        lam, v, res = _postprocess(L, vecs[:, j])
        if res > tol:
            raise SolverError(
                f"eigenvector {j} residual {res:.3e} exceeds tol {tol:.3e}"
            )
        out.append((lam, v, res))
    return out


def _worst_residual(L, vecs, tol) -> float:
    worst = 0.0
    for j in range(1, vecs.shape[1]):
        try:
            _, _, res = _postprocess(L, vecs[:, j])
        except SolverError:
            return np.inf
        worst = max(worst, res)
    return worst


def fiedler(g: Graph, tol: float = 1e-8) -> FiedlerResult:
    """Algebraic connectivity and Fiedler vector of a connected graph.

    The vector is unit-norm, orthogonal to the constant vector, and
    sign-normalized so its largest-magnitude entry is positive (ties broken
    toward the lowest vertex index). On a repeated eigenvalue any vector in
    the eigenspace may be returned. Raises SolverError if no solve reaches
    the requested residual.
    """
    if g.num_vertices < 2:
        raise ValueError("fiedler needs at least 2 vertices")
    if not is_connected(g):
        raise ValueError("fiedler requires a connected graph")
    L = laplacian(g).matrix
    ((lam, vec, res),) = _low_eigenvectors(L, 2, tol)
    return FiedlerResult(lam, vec, res)


def spectral_embedding(g: Graph, k: int, tol: float = 1e-8) -> np.ndarray:
    """Rows are vertex coordinates from eigenvectors 2..k of the Laplacian.

    Shape (n, k-1); column 0 equals the Fiedler vector, so a k=2 embedding is
    exactly `fiedler(g).vector` as a column.
    """
    if not 2 <= k <= g.num_vertices:
        raise ValueError(f"k must lie in 2..n, got k={k}")
    if not is_connected(g):
        raise ValueError("spectral_embedding requires a connected graph")
    L = laplacian(g).matrix
    cols = _low_eigenvectors(L, k, tol)
    return np.column_stack([v for _, v, _ in cols])


def sign_split(g: Graph, vector: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vertex indices with entry >= 0, then those with entry < 0.

    The first side contains the sign-normalization anchor, so it is never
    empty; the second side can be (callers treat that as degenerate).
    """
    return threshold_split(g, vector, 0.0)


def threshold_split(g: Graph, vector: np.ndarray, t: float) -> tuple[np.ndarray, np.ndarray]:
    """Vertex indices split by entry >= t versus entry < t."""
    vec = np.asarray(vector)
    if vec.shape != (g.num_vertices,):
        raise ValueError("vector length does not match graph")
    ge = vec >= t
    return np.flatnonzero(ge), np.flatnonzero(~ge)
