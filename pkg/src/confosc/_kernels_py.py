"""Pure-Python versions of the compiled eigen kernels (same operation order).

``jacobi_eigh`` works on float64 arrays and on object arrays of mpmath numbers; for the
latter the caller sets the working precision.
"""

from __future__ import annotations

import mpmath
import numpy as np


def _abs(x):
    return x if x >= 0 else -x


def jacobi_eigh(A_in, max_sweeps: int = 60, skip_after: int = 4):
    """Return ``(w, V, sweeps)`` with ``A = V diag(w) V^T``; ``w`` unsorted."""
    A = np.array(A_in, copy=True)
    n = A.shape[0]
    is_obj = A.dtype == object
    if is_obj:
        one = mpmath.mpf(1)
        zero = one * 0
        V = np.full((n, n), zero, dtype=object)
        for k in range(n):
            V[k, k] = one
        root = mpmath.sqrt
    else:
        A = A.astype(float)
        zero = 0.0
        V = np.eye(n)
        root = np.sqrt
    sweep = 0
    while sweep < max_sweeps:
        off = sum(_abs(x) for x in A[np.triu_indices(n, 1)])
        if off == 0:
            break
        sweep += 1
        for p in range(n):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0:
                    continue
                app, aqq = A[p, p], A[q, q]
                g = 100 * _abs(apq)
                if sweep > skip_after and _abs(app) + g == _abs(app) and _abs(aqq) + g == _abs(aqq):
                    A[p, q] = A[q, p] = zero
                    continue
                theta = (aqq - app) / (2 * apq)
                if _abs(theta) > 1e150:
                    t = 1 / (2 * _abs(theta))
                else:
                    t = 1 / (_abs(theta) + root(theta * theta + 1))
                if theta < 0:
                    t = -t
                c = 1 / root(t * t + 1)
                s = t * c
                ap = A[:, p].copy()
                aq = A[:, q].copy()
                # array operand first: mpf * ndarray goes through a slow repr path
                A[:, p] = ap * c - aq * s
                A[:, q] = ap * s + aq * c
                A[p, :] = A[:, p]
                A[q, :] = A[:, q]
                A[p, p] = app - t * apq
                A[q, q] = aqq + t * apq
                A[p, q] = A[q, p] = zero
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = vp * c - vq * s
                V[:, q] = vp * s + vq * c
    w = np.array([A[k, k] for k in range(n)], dtype=A.dtype)
    return w, V, sweep


def tridiag_ql_eigh(A_in, max_iter: int = 60):
    """Householder tridiagonalization + implicit QL (float64 only).

    Same operation order as the compiled kernel, with the innermost loops
    vectorized. Arrays are padded for 1-based indexing.
    """
    A_in = np.asarray(A_in, dtype=float)
    n = A_in.shape[0]
    a = np.zeros((n + 1, n + 1))
    a[1:, 1:] = A_in
    d = np.zeros(n + 1)
    e = np.zeros(n + 1)
    for i in range(n, 1, -1):
        l = i - 1
        h = 0.0
        if l > 1:
            scale = float(np.abs(a[i, 1 : l + 1]).sum())
            if scale == 0.0:
                e[i] = a[i, l]
            else:
                a[i, 1 : l + 1] /= scale
                h = float(a[i, 1 : l + 1] @ a[i, 1 : l + 1])
                f = a[i, l]
                g = -np.sqrt(h) if f >= 0.0 else np.sqrt(h)
                e[i] = scale * g
                h -= f * g
                a[i, l] = f - g
                f = 0.0
                for j in range(1, l + 1):
                    a[j, i] = a[i, j] / h
                    g = a[j, 1 : j + 1] @ a[i, 1 : j + 1] + a[j + 1 : l + 1, j] @ a[i, j + 1 : l + 1]
                    e[j] = g / h
                    f += e[j] * a[i, j]
                hh = f / (h + h)
                for j in range(1, l + 1):
                    f = a[i, j]
                    g = e[j] - hh * f
                    e[j] = g
                    a[j, 1 : j + 1] -= f * e[1 : j + 1] + g * a[i, 1 : j + 1]
        else:
            e[i] = a[i, l]
        d[i] = h
    d[1] = 0.0
    e[1] = 0.0
    for i in range(1, n + 1):
        l = i - 1
        if d[i] != 0.0:
            for j in range(1, l + 1):
                g = a[i, 1 : l + 1] @ a[1 : l + 1, j]
                a[1 : l + 1, j] -= g * a[1 : l + 1, i]
        d[i] = a[i, i]
        a[i, i] = 1.0
        a[1:i, i] = 0.0
        a[i, 1:i] = 0.0
    e[1:n] = e[2 : n + 1]
    if n >= 1:
        e[n] = 0.0
    for l in range(1, n + 1):
        it = 0
        while True:
            m = l
            while m < n:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) + dd == dd:
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                raise ArithmeticError("QL iteration did not converge")
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = c = 1.0
            p = 0.0
            r = 1.0
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                zi1 = a[1:, i + 1].copy()
                a[1:, i + 1] = s * a[1:, i] + c * zi1
                a[1:, i] = c * a[1:, i] - s * zi1
                i -= 1
            if r == 0.0 and i >= l:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d[1:].copy(), a[1:, 1:].copy()
