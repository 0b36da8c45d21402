import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from confosc import _kernels_py, kernels
from confosc.linalg import (
    NotPositiveDefinite, RankError, canonical_orthogonalization, cholesky, inv_lower, ldl_exact, sym_eigh,
)
from confosc.policy import as_mpf_array, to_mpq

ext = pytest.importorskip("confosc._kernels_ext") if kernels.HAVE_EXTENSION else None


def _sym(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n))
    return (A + A.T) / 2


@pytest.mark.parametrize("method", ["ql", "jacobi"])
@pytest.mark.parametrize("n", [1, 2, 5, 17, 40])
def test_float_eigh_matches_numpy(method, n):
    A = _sym(n, n)
    w, V = sym_eigh(A, method=method)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(A), atol=1e-12 * max(1, abs(w).max()))
    np.testing.assert_allclose(V.T @ V, np.eye(n), atol=1e-12)
    np.testing.assert_allclose(A @ V, V * w, atol=1e-11)


@settings(max_examples=30, deadline=None)
@given(arrays(np.float64, (6, 6), elements=st.floats(-10, 10)))
def test_eigh_property(M):
    A = (M + M.T) / 2
    for method in ("ql", "jacobi"):
        w, V = sym_eigh(A, method=method)
        assert np.all(np.diff(w) >= 0)
        np.testing.assert_allclose(V @ np.diag(w) @ V.T, A, atol=1e-10)


@pytest.mark.parametrize("scale", [1e-200, 1e-150, 1e150])
def test_extreme_magnitudes(scale):
    A = _sym(6, 11) * scale
    for method in ("ql", "jacobi"):
        w, V = sym_eigh(A, method=method)
        np.testing.assert_allclose(w / scale, np.linalg.eigvalsh(A / scale), atol=1e-12)
        np.testing.assert_allclose(V.T @ V, np.eye(6), atol=1e-12)


def test_subnormal_coupling():
    # squared rotation terms underflow to zero here
    A = np.zeros((6, 6))
    A[1, 1] = 1.0
    A[0, 2] = A[2, 0] = 1.4e-188
    for method in ("ql", "jacobi"):
        w, V = sym_eigh(A, method=method)
        np.testing.assert_allclose(w, [0, 0, 0, 0, 0, 1], atol=1e-15)
        np.testing.assert_allclose(V.T @ V, np.eye(6), atol=1e-13)


def test_degenerate_spectrum():
    Q, _ = np.linalg.qr(_sym(6, 1))
    A = Q @ np.diag([1.0, 1.0, 1.0, 2.0, 2.0, 5.0]) @ Q.T
    for method in ("ql", "jacobi"):
        w, V = sym_eigh((A + A.T) / 2, method=method)
        np.testing.assert_allclose(w, [1, 1, 1, 2, 2, 5], atol=1e-13)
        np.testing.assert_allclose(V.T @ V, np.eye(6), atol=1e-13)


@pytest.mark.skipif(not kernels.HAVE_EXTENSION, reason="compiled kernels not built")
@pytest.mark.parametrize("n", [3, 12, 30])
def test_extension_agrees_with_python(n):
    A = _sym(n, 100 + n)
    w1, V1, _ = ext.jacobi_eigh(A, 60, 4)
    w2, V2, _ = _kernels_py.jacobi_eigh(A, 60, 4)
    np.testing.assert_allclose(np.sort(w1), np.sort(w2), atol=1e-13)
    q1, _ = ext.tridiag_ql_eigh(A, 60)
    q2, _ = _kernels_py.tridiag_ql_eigh(A, 60)
    np.testing.assert_allclose(np.sort(q1), np.sort(q2), atol=1e-13)


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
    assert kernels.HAVE_EXTENSION == (kernels.BACKEND == "cython")


def test_extended_precision_eigh():
    with mpmath.workdps(40):
        A = as_mpf_array(_sym(6, 7))
        for warm in (True, False):
            w, V = sym_eigh(A, warm=warm)
            R = A @ V - V * np.array(w, dtype=object)
            assert max(abs(x) for x in R.ravel()) < mpmath.mpf(10) ** -35
            G = V.T @ V - np.eye(6, dtype=object)
            assert max(abs(x) for x in G.ravel()) < mpmath.mpf(10) ** -35
        ref = mpmath.eigsy(mpmath.matrix(A.tolist()))[0]
        assert max(abs(w[k] - ref[k]) for k in range(6)) < mpmath.mpf(10) ** -35


def test_exact_ldl_and_inverse():
    H = np.array([[to_mpq(1) / (i + j + 1) for j in range(5)] for i in range(5)], dtype=object)
    L, D = ldl_exact(H)
    R = L @ np.diag(np.array(D, dtype=object)) @ L.T
    assert all(x == y for x, y in zip(R.ravel(), H.ravel()))
    Li = inv_lower(L)
    P = Li @ L
    assert all(P[i, j] == (1 if i == j else 0) for i in range(5) for j in range(5))
    with pytest.raises(NotPositiveDefinite):
        ldl_exact(np.array([[to_mpq(1), to_mpq(2)], [to_mpq(2), to_mpq(1)]], dtype=object))


def test_float_cholesky():
    A = _sym(5, 3) + 6 * np.eye(5)
    L = cholesky(A)
    np.testing.assert_allclose(L @ L.T, A, atol=1e-13)
    with pytest.raises(NotPositiveDefinite):
        cholesky(-np.eye(2))


def test_canonical_orthogonalization_drops_null_direction():
    v = np.array([1.0, 2.0, 3.0])
    S = np.eye(3) + np.outer(v, v)
    S[:, 2] = S[:, 0] + S[:, 1]
    S[2, :] = S[0, :] + S[1, :]  # exactly rank 2
    X = canonical_orthogonalization(S, 1e-10)
    assert X.shape == (3, 2)
    np.testing.assert_allclose(X.T @ S @ X, np.eye(2), atol=1e-12)
    with pytest.raises(RankError):
        canonical_orthogonalization(np.eye(2), 2.0)
