"""Spectral module tests.

The reference for every eigenvalue assertion is a full dense
eigendecomposition (numpy.linalg.eigh), independent of the production solve
paths (LAPACK subset driver below the cutoff, shift-invert ARPACK above it).
"""

import numpy as np
import pytest
import scipy.sparse.linalg  # noqa: F401  (needed for monkeypatching below)

from specchain import (
    Graph,
    SolverError,
    fiedler,
    laplacian,
    make_grid,
    sign_split,
    spectral_embedding,
    threshold_split,
)
from specchain import spectral as spectral_mod
from conftest import random_connected_graph


def dense_lambda2(g):
    return float(np.sort(np.linalg.eigvalsh(laplacian(g).dense()))[1])


def path3():
    return Graph(["a", "b", "c"], np.ones(3), [(0, 1), (1, 2)], np.ones(2))


# ---------- Laplacian ----------

def test_laplacian_entries():
    g = path3()
    L = laplacian(g).dense()
    expected = np.array([[1.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 1.0]])
    assert np.array_equal(L, expected)


def test_laplacian_row_sums_zero(rng):
    for _ in range(100):
        n = int(rng.integers(2, 40))
        g = random_connected_graph(rng, n, extra_p=0.2, weight_range=(0.1, 9.0))
        L = laplacian(g)
        assert (L.matrix != L.matrix.T).nnz == 0
        bound = 1e-10 * L.matrix.diagonal().max()
        assert np.abs(L.matrix @ np.ones(n)).max() <= bound


# ---------- fiedler: frozen small cases ----------

def test_fiedler_path3():
    fr = fiedler(path3())
    assert abs(fr.lambda2 - 1.0) <= 1e-8
    assert np.allclose(fr.vector, [1 / np.sqrt(2), 0.0, -1 / np.sqrt(2)], atol=1e-8)
    assert fr.residual <= 1e-8


def test_fiedler_single_edge_weighted():
    g = Graph(["u", "v"], np.ones(2), [(0, 1)], [1.5])
    fr = fiedler(g)
    assert abs(fr.lambda2 - 3.0) <= 1e-8
    assert np.allclose(fr.vector, [1 / np.sqrt(2), -1 / np.sqrt(2)], atol=1e-8)


def test_fiedler_complete4_repeated_eigenvalue():
    edges = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    g = Graph(list("abcd"), np.ones(4), edges, np.ones(6))
    fr = fiedler(g)
    # lambda2 = 4 with multiplicity 3; any unit eigenvector is acceptable
    assert abs(fr.lambda2 - 4.0) <= 1e-8
    assert fr.residual <= 1e-8


def test_fiedler_path4_analytic():
    g = Graph(list("abcd"), np.ones(4), [(0, 1), (1, 2), (2, 3)], np.ones(3))
    fr = fiedler(g)
    assert abs(fr.lambda2 - (2.0 - np.sqrt(2.0))) <= 1e-8
    # monotone along the path after sign normalization
    assert np.all(np.diff(fr.vector) < 0)


# ---------- fiedler: properties against the dense oracle ----------

def test_fiedler_matches_dense_oracle_small(rng):
    for _ in range(120):
        n = int(rng.integers(2, 9))
        g = random_connected_graph(rng, n, extra_p=0.4, weight_range=(0.2, 4.0))
        fr = fiedler(g)
        assert abs(fr.lambda2 - dense_lambda2(g)) <= 1e-8
        assert fr.residual <= 1e-8


def test_fiedler_matches_dense_oracle_iterative_path(rng):
    # n above the dense cutoff exercises shift-invert ARPACK
    for _ in range(20):
        n = int(rng.integers(spectral_mod.DENSE_CUTOFF + 1, 220))
        g = random_connected_graph(rng, n, extra_p=3.0 / n)
        fr = fiedler(g)
        assert abs(fr.lambda2 - dense_lambda2(g)) <= 1e-8
        assert fr.residual <= 1e-8


def test_fiedler_vector_contract(rng):
    for _ in range(100):
        n = int(rng.integers(2, 50))
        g = random_connected_graph(rng, n, extra_p=0.15)
        f = fiedler(g).vector
        assert abs(np.linalg.norm(f) - 1.0) <= 1e-10
        assert abs(f.sum()) <= 1e-8 * np.sqrt(n)
        anchor = int(np.argmax(np.abs(f)))
        assert f[anchor] > 0


def test_fiedler_deterministic(rng):
    g = random_connected_graph(rng, 150, extra_p=0.03)
    a, b = fiedler(g), fiedler(g)
    assert a.lambda2 == b.lambda2
    assert np.array_equal(a.vector, b.vector)


def test_fiedler_preconditions():
    with pytest.raises(ValueError):
        fiedler(Graph(["a"], np.ones(1), np.empty((0, 2)), np.empty(0)))
    disconnected = Graph(["a", "b", "c", "d"], np.ones(4), [(0, 1), (2, 3)], np.ones(2))
    with pytest.raises(ValueError, match="connected"):
        fiedler(disconnected)


def test_solver_error_when_too_large_for_fallback(monkeypatch):
    side = 65  # 4225 vertices, above the dense fallback limit
    g, _ = make_grid(side, 1)

    def boom(L, count, maxiter):
        raise RuntimeError("forced failure")

    monkeypatch.setattr(spectral_mod, "_eig_sparse", boom)
    with pytest.raises(SolverError, match="too large"):
        fiedler(g)


def test_dense_fallback_rescues_iterative_failure(monkeypatch, rng):
    g = random_connected_graph(rng, 90, extra_p=0.05)

    def boom(L, count, maxiter):
        raise RuntimeError("forced failure")

    monkeypatch.setattr(spectral_mod, "_eig_sparse", boom)
    fr = fiedler(g)
    assert abs(fr.lambda2 - dense_lambda2(g)) <= 1e-8


# ---------- splits ----------

def test_sign_split_path3():
    g = path3()
    f = fiedler(g).vector
    ge, lt = sign_split(g, f)
    assert ge.tolist() == [0, 1]
    assert lt.tolist() == [2]


def test_threshold_split_path3():
    g = path3()
    f = fiedler(g).vector
    ge, lt = threshold_split(g, f, 0.5)
    assert ge.tolist() == [0]
    assert lt.tolist() == [1, 2]


def test_threshold_zero_equals_sign_split(rng):
    for _ in range(100):
        n = int(rng.integers(2, 30))
        g = random_connected_graph(rng, n, extra_p=0.2)
        f = rng.standard_normal(n)
        f[rng.integers(n)] = 0.0  # make exact zeros appear sometimes
        s = sign_split(g, f)
        t = threshold_split(g, f, 0.0)
        assert np.array_equal(s[0], t[0]) and np.array_equal(s[1], t[1])
        # the two sides always partition the vertex set
        both = np.sort(np.concatenate([s[0], s[1]]))
        assert np.array_equal(both, np.arange(n))


def test_sign_split_nonneg_side_never_empty(rng):
    for _ in range(50):
        n = int(rng.integers(2, 40))
        g = random_connected_graph(rng, n, extra_p=0.2)
        ge, _ = sign_split(g, fiedler(g).vector)
        assert len(ge) > 0


def test_split_length_mismatch():
    with pytest.raises(ValueError):
        sign_split(path3(), np.ones(5))


# ---------- embedding ----------

def test_embedding_k2_equals_fiedler(rng):
    g = random_connected_graph(rng, 30, extra_p=0.2)
    emb = spectral_embedding(g, 2)
    assert emb.shape == (30, 1)
    assert np.allclose(emb[:, 0], fiedler(g).vector, atol=1e-10)


def test_embedding_columns_are_low_eigenvectors(rng):
    g = random_connected_graph(rng, 24, extra_p=0.3)
    k = 5
    emb = spectral_embedding(g, k)
    assert emb.shape == (24, k - 1)
    L = laplacian(g).dense()
    vals = np.sort(np.linalg.eigvalsh(L))
    for j in range(k - 1):
        col = emb[:, j]
        assert abs(np.linalg.norm(col) - 1.0) <= 1e-10
        lam = col @ (L @ col)
        assert abs(lam - vals[j + 1]) <= 1e-8
        assert np.linalg.norm(L @ col - lam * col) <= 1e-8


def test_embedding_sparse_path_matches_oracle(rng):
    g = random_connected_graph(rng, 120, extra_p=0.04)
    emb = spectral_embedding(g, 4)
    L = laplacian(g).dense()
    vals = np.sort(np.linalg.eigvalsh(L))
    for j in range(3):
        lam = emb[:, j] @ (L @ emb[:, j])
        assert abs(lam - vals[j + 1]) <= 1e-8


def test_embedding_validates_k():
    g = path3()
    with pytest.raises(ValueError):
        spectral_embedding(g, 1)
    with pytest.raises(ValueError):
        spectral_embedding(g, 4)
