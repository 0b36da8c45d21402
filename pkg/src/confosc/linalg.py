"""Dense symmetric linear algebra at exact, extended and double precision.

Object arrays hold gmpy2 rationals or mpmath floats; mpmath routines run at
whatever precision the caller has set with ``mpmath.workdps``.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np

from . import kernels
from .policy import as_float_array, as_mpf_array


class NotPositiveDefinite(ArithmeticError):
    pass


class RankError(ArithmeticError):
    pass


def ldl_exact(S: np.ndarray) -> tuple[np.ndarray, list]:
    """Exact ``S = L D L^T`` with unit lower-triangular ``L`` (rational entries)."""
    n = S.shape[0]
    A = S.copy()
    L = np.zeros((n, n), dtype=object)
    L[:, :] = A[0, 0] * 0 if n else 0
    D = []
    for k in range(n):
        d = A[k, k]
        if d <= 0:
            raise NotPositiveDefinite(f"pivot {k} is {d}")
        D.append(d)
        L[k, k] = d / d
        col = A[k + 1 :, k] / d
        L[k + 1 :, k] = col
        A[k + 1 :, k + 1 :] -= np.outer(col, A[k + 1 :, k])
    return L, D


def inv_lower(L: np.ndarray) -> np.ndarray:
    """Inverse of a lower-triangular matrix by forward substitution."""
    n = L.shape[0]
    X = np.zeros_like(L)
    if L.dtype == object:
        X[:, :] = L[0, 0] * 0 if n else 0
    for i in range(n):
        row = -(L[i, :i] @ X[:i, :]) if i else X[i, :] * 0
        row[i] = row[i] + 1
        X[i, :] = row / L[i, i]
    return X


def cholesky(S: np.ndarray, rel_pivot_tol: float = 0.0) -> np.ndarray:
    """Lower Cholesky factor; raises if a pivot falls below ``tol * S_kk``."""
    n = S.shape[0]
    A = S.copy()
    L = np.zeros_like(A)
    if A.dtype == object:
        L[:, :] = A[0, 0] * 0 if n else 0
        root = mpmath.sqrt
    else:
        root = math.sqrt
    for k in range(n):
        d = A[k, k]
        if not d > rel_pivot_tol * S[k, k]:
            raise NotPositiveDefinite(f"pivot {k} is {d}")
        lk = root(d)
        L[k, k] = lk
        col = A[k + 1 :, k] / lk
        L[k + 1 :, k] = col
        A[k + 1 :, k + 1 :] -= np.outer(col, col)
    return L


def _eigh_f64(A: np.ndarray, method: str):
    # unit max-norm keeps the squared rotation terms away from under/overflow
    scale = float(np.max(np.abs(A))) if A.size else 0.0
    if scale == 0.0 or not np.isfinite(scale):
        scale = 1.0
    As = A / scale
    # entries this far below eps * ||A|| cannot move the result but can go subnormal
    As[np.abs(As) < 1e-30] = 0.0
    if method == "jacobi":
        w, V, _ = kernels.jacobi_eigh_f64(As)
    elif method == "ql":
        w, V = kernels.tridiag_ql_eigh_f64(As)
    else:
        raise ValueError(f"unknown eigen method {method!r}")
    return w * scale, V


def sym_eigh(A: np.ndarray, warm: bool = True, method: str = "ql"):
    """Ascending eigenpairs of a symmetric matrix.

    Float arrays use the float64 kernel named by ``method`` (tridiagonal QL
    or cyclic Jacobi). Object arrays always use cyclic Jacobi at the current
    precision; with ``warm`` they are first rotated by float64 eigenvectors
    (re-orthonormalized at full precision) so Jacobi only has to clean up a
    nearly diagonal matrix.
    """
    n = A.shape[0]
    if n == 0:
        return A.diagonal().copy(), A.copy()
    if A.dtype != object:
        w, V = _eigh_f64(A, method)
        order = np.argsort(w, kind="stable")
        return w[order], V[:, order]
    if not warm or n == 1:
        w, V, _ = kernels.jacobi_eigh_obj(A)
    else:
        _, Y0 = _eigh_f64(as_float_array(A), method)
        Y = orthonormalize(as_mpf_array(Y0))
        B = Y.T @ A @ Y
        B = (B + B.T) / 2
        w, VB, _ = kernels.jacobi_eigh_obj(B, skip_after=0)
        V = Y @ VB
    order = sorted(range(n), key=lambda k: w[k])
    return np.array([w[k] for k in order], dtype=object), V[:, order]


def orthonormalize(Y: np.ndarray, max_iter: int = 12) -> np.ndarray:
    """Newton-Schulz polish of an almost orthogonal matrix at current precision."""
    n = Y.shape[1]
    eye = np.empty((n, n), dtype=object)
    eye[:, :] = mpmath.mpf(0)
    for k in range(n):
        eye[k, k] = mpmath.mpf(1)
    tol = mpmath.mpf(10) ** (-mpmath.mp.dps + 2)
    for _ in range(max_iter):
        G = Y.T @ Y
        err = max(abs(x) for x in (G - eye).ravel())
        if err <= tol:
            break
        Y = Y @ (3 * eye - G) / 2
    return Y


def canonical_orthogonalization(S: np.ndarray, tau: float) -> np.ndarray:
    """``X`` with ``X^T S X = I`` spanning eigen-directions of S above ``tau * max``.

    S is diagonally scaled first so the cutoff is insensitive to the size of
    the basis functions.
    """
    n = S.shape[0]
    obj = S.dtype == object
    root = mpmath.sqrt if obj else math.sqrt
    scale = np.array([1 / root(S[k, k]) for k in range(n)], dtype=S.dtype)
    St = S * np.outer(scale, scale)
    s, U = sym_eigh(St)
    smax = s[-1]
    keep = [k for k in range(n) if s[k] > tau * smax]
    if not keep:
        raise RankError("overlap matrix has no usable directions")
    X = U[:, keep] * np.array([1 / root(s[k]) for k in keep], dtype=S.dtype)
    return X * scale[:, None]
