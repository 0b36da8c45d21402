"""Independent reference computations for the tests.

Matrix entries are recomputed by high-order Gauss-Legendre quadrature in r
and an equispaced trapezoid rule in phi (exact for trigonometric polynomials
of degree below the point count). Basis functions and their radial
derivatives are written out here from scratch instead of being imported.
"""

import mpmath
import numpy as np


def radial(i, r0, gaussian):
    def u(r):
        g = mpmath.exp(-r * r / 2) if gaussian else 1
        return r**i * (r0 - r) * g

    def du(r):
        g = mpmath.exp(-r * r / 2) if gaussian else 1
        p = (i * r ** (i - 1) if i else 0) * (r0 - r) - r**i
        if gaussian:
            p -= r ** (i + 1) * (r0 - r)
        return p * g

    return u, du


def angular(parity, j):
    return (lambda t: mpmath.cos(j * t)) if parity == "even" else (lambda t: mpmath.sin(j * t))


def trapezoid_phi(f, points=64):
    h = 2 * mpmath.pi / points
    return h * mpmath.fsum(f(k * h) for k in range(points))


def quadrature_matrices(indices, parity, r0, gaussian, dps=30, degree=6):
    """S, T, Q, W as mpf arrays, for (i, j) index pairs."""
    with mpmath.workdps(dps + 10):
        r0 = mpmath.mpf(r0)
        n = len(indices)
        funcs = [radial(i, r0, gaussian) for i, _ in indices]
        ang = [angular(parity, j) for _, j in indices]

        def rint(f):
            return mpmath.quad(f, [0, r0], method="gauss-legendre", maxdegree=degree)

        S, T, Q, W = (np.empty((n, n), dtype=object) for _ in range(4))
        for a in range(n):
            ua, dua = funcs[a]
            ja = indices[a][1]
            for b in range(a, n):
                ub, dub = funcs[b]
                jb = indices[b][1]
                ovl = trapezoid_phi(lambda t: ang[a](t) * ang[b](t))
                dip = trapezoid_phi(lambda t: ang[a](t) * mpmath.cos(t) * ang[b](t))
                # d/dphi of cos(j phi) is -j sin(j phi), of sin is j cos; product of derivatives:
                dang = trapezoid_phi(lambda t: _dang(parity, ja, t) * _dang(parity, jb, t))
                s = rint(lambda r: ua(r) * ub(r) * r)
                q = rint(lambda r: ua(r) * ub(r) * r**3)
                w = rint(lambda r: ua(r) * ub(r) * r**2)
                kr = rint(lambda r: dua(r) * dub(r) * r)
                kphi = rint(lambda r: ua(r) * ub(r) / r) if ja and jb else 0
                S[a, b] = S[b, a] = s * ovl
                Q[a, b] = Q[b, a] = q * ovl / 2
                W[a, b] = W[b, a] = w * dip
                T[a, b] = T[b, a] = (kr * ovl + kphi * dang) / 2
        return {"S": S, "T": T, "Q": Q, "W": W}


def _dang(parity, j, t):
    return -j * mpmath.sin(j * t) if parity == "even" else j * mpmath.cos(j * t)


def max_rel_diff(A, B, dps=30):
    """max |A-B| / |B| over entries; entries that vanish in B are held to 1e-25 of max |B|."""
    with mpmath.workdps(dps):
        scale = max(abs(mpmath.mpf(x)) for x in B.ravel())
        worst = mpmath.mpf(0)
        for a, b in zip(A.ravel(), B.ravel()):
            a, b = mpmath.mpf(a), mpmath.mpf(b)
            if abs(b) <= 1e-20 * scale:
                d = abs(a - b) / scale * mpmath.mpf(10) ** 15
            else:
                d = abs(a - b) / abs(b)
            worst = max(worst, d)
        return float(worst)
