# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Dense symmetric eigen kernels: cyclic Jacobi and tridiagonal QL (float64)."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, hypot, sqrt

cnp.import_array()


def jacobi_eigh(A_in, int max_sweeps=60, int skip_after=4):
    """Return ``(w, V, sweeps)`` with ``A = V diag(w) V^T``; ``w`` unsorted."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] A_arr = np.array(A_in, dtype=np.float64, order="C", copy=True)
    cdef Py_ssize_t n = A_arr.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] V_arr = np.eye(n, dtype=np.float64)
    cdef double[:, ::1] A = A_arr
    cdef double[:, ::1] V = V_arr
    cdef Py_ssize_t p, q, k
    cdef int sweep = 0
    cdef double off, apq, app, aqq, g, theta, t, c, s, akp, akq
    while sweep < max_sweeps:
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += fabs(A[p, q])
        if off == 0.0:
            break
        sweep += 1
        for p in range(n):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                app = A[p, p]
                aqq = A[q, q]
                g = 100.0 * fabs(apq)
                if sweep > skip_after and fabs(app) + g == fabs(app) and fabs(aqq) + g == fabs(aqq):
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    continue
                theta = (aqq - app) / (2.0 * apq)
                if fabs(theta) > 1e150:
                    t = 0.5 / fabs(theta)
                else:
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = c * akp - s * akq
                    A[k, q] = s * akp + c * akq
                for k in range(n):
                    A[p, k] = A[k, p]
                    A[q, k] = A[k, q]
                A[p, p] = app - t * apq
                A[q, q] = aqq + t * apq
                A[p, q] = 0.0
                A[q, p] = 0.0
                for k in range(n):
                    akp = V[k, p]
                    akq = V[k, q]
                    V[k, p] = c * akp - s * akq
                    V[k, q] = s * akp + c * akq
    w = np.array([A_arr[k, k] for k in range(n)], dtype=np.float64)
    return w, V_arr, sweep


def tridiag_ql_eigh(A_in, int max_iter=60):
    """Householder tridiagonalization + implicit QL with eigenvectors.

    Return ``(w, V)`` with ``A = V diag(w) V^T``; ``w`` unsorted.
    Arrays are padded so the loops can use 1-based indices.
    """
    cdef Py_ssize_t n = np.asarray(A_in).shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a_arr = np.zeros((n + 1, n + 1), dtype=np.float64)
    a_arr[1:, 1:] = np.asarray(A_in, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d_arr = np.zeros(n + 1, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] e_arr = np.zeros(n + 1, dtype=np.float64)
    cdef double[:, ::1] a = a_arr
    cdef double[::1] d = d_arr
    cdef double[::1] e = e_arr
    cdef Py_ssize_t i, j, k, l, m
    cdef double h, scale, f, g, hh, r, s, c, p, b, dd
    cdef int it
    # tridiagonalize
    for i in range(n, 1, -1):
        l = i - 1
        h = 0.0
        scale = 0.0
        if l > 1:
            for k in range(1, l + 1):
                scale += fabs(a[i, k])
            if scale == 0.0:
                e[i] = a[i, l]
            else:
                for k in range(1, l + 1):
                    a[i, k] /= scale
                    h += a[i, k] * a[i, k]
                f = a[i, l]
                g = -sqrt(h) if f >= 0.0 else sqrt(h)
                e[i] = scale * g
                h -= f * g
                a[i, l] = f - g
                f = 0.0
                for j in range(1, l + 1):
                    a[j, i] = a[i, j] / h
                    g = 0.0
                    for k in range(1, j + 1):
                        g += a[j, k] * a[i, k]
                    for k in range(j + 1, l + 1):
                        g += a[k, j] * a[i, k]
                    e[j] = g / h
                    f += e[j] * a[i, j]
                hh = f / (h + h)
                for j in range(1, l + 1):
                    f = a[i, j]
                    g = e[j] - hh * f
                    e[j] = g
                    for k in range(1, j + 1):
                        a[j, k] -= f * e[k] + g * a[i, k]
        else:
            e[i] = a[i, l]
        d[i] = h
    d[1] = 0.0
    e[1] = 0.0
    # accumulate transformations
    for i in range(1, n + 1):
        l = i - 1
        if d[i] != 0.0:
            for j in range(1, l + 1):
                g = 0.0
                for k in range(1, l + 1):
                    g += a[i, k] * a[k, j]
                for k in range(1, l + 1):
                    a[k, j] -= g * a[k, i]
        d[i] = a[i, i]
        a[i, i] = 1.0
        for j in range(1, l + 1):
            a[j, i] = 0.0
            a[i, j] = 0.0
    # implicit QL on the tridiagonal matrix
    for i in range(2, n + 1):
        e[i - 1] = e[i]
    if n >= 1:
        e[n] = 0.0
    for l in range(1, n + 1):
        it = 0
        while True:
            m = l
            while m < n:
                dd = fabs(d[m]) + fabs(d[m + 1])
                if fabs(e[m]) + dd == dd:
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                raise ArithmeticError("QL iteration did not converge")
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            r = 1.0
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = hypot(f, g)
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
                for k in range(1, n + 1):
                    f = a[k, i + 1]
                    a[k, i + 1] = s * a[k, i] + c * f
                    a[k, i] = c * a[k, i] - s * f
                i -= 1
            if r == 0.0 and i >= l:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d_arr[1:].copy(), a_arr[1:, 1:].copy()
