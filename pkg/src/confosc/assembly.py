"""Analytic overlap and Hamiltonian matrix elements.

For basis functions ``f_a = u_a(r) A_{j_a}(phi)`` the four matrices are

    S = <f_a|f_b>                         T = 1/2 <grad f_a|grad f_b>
    Q = 1/2 <f_a|r**2|f_b>                W = <f_a|r cos(phi)|f_b>

so that ``H(lam) = T + Q + lam * W``. Radial integrals reduce to moments of
``r**k`` (polynomial basis) or ``r**k exp(-r**2)`` (Gaussian basis); angular
integrals are rational multiples of pi.
"""

from __future__ import annotations

import json
import warnings
from contextlib import nullcontext
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
import mpmath
import numpy as np

from .basis import BasisIndex, BasisKind, BasisSpec, enumerate_basis
from .model import InvalidInput, Parity, as_rational
from .policy import PolicyError, PolicyKind, ScalarPolicy, to_mpq
from .special import AccuracyWarning, gauss_moments


def angular_overlap(parity: Parity, j: int, jp: int) -> Fraction:
    """``int_0^2pi A_j A_jp dphi`` in units of pi."""
    parity = Parity.parse(parity)
    if j != jp:
        return Fraction(0)
    if parity is Parity.EVEN:
        return Fraction(2) if j == 0 else Fraction(1)
    return Fraction(1) if j >= 1 else Fraction(0)


def angular_dipole(parity: Parity, j: int, jp: int) -> Fraction:
    """``int_0^2pi A_j cos(phi) A_jp dphi`` in units of pi."""
    parity = Parity.parse(parity)
    if abs(j - jp) != 1:
        return Fraction(0)
    lo = min(j, jp)
    if parity is Parity.EVEN and lo == 0:
        return Fraction(1)
    return Fraction(1, 2)


def radial_moment_poly(k: int, r0):
    """``int_0^r0 r**k dr``; exact for rational ``r0``."""
    if k < 0:
        raise InvalidInput("moment order must be >= 0")
    if isinstance(r0, float):
        return r0 ** (k + 1) / (k + 1)
    r0 = as_rational(r0)
    return r0 ** (k + 1) / (k + 1)


def radial_moment_gauss(k: int, r0, policy: ScalarPolicy | None = None):
    """``int_0^r0 r**k exp(-r**2) dr`` at the policy's precision."""
    policy = policy or ScalarPolicy.decimal(50)
    if policy.kind is PolicyKind.EXACT:
        raise PolicyError("Gaussian moments are transcendental; use a float policy")
    value = gauss_moments(k, as_rational(r0), policy.digits)[k]
    return float(value) if policy.kind is PolicyKind.DOUBLE else value


# radial factors are kept as {power: coefficient} polynomials


def _radial_poly(i: int, r0) -> dict[int, object]:
    return {i: r0, i + 1: -1}


def _radial_derivative(p: dict[int, object], gaussian: bool) -> dict[int, object]:
    d: dict[int, object] = {}
    for k, c in p.items():
        if k:
            d[k - 1] = d.get(k - 1, 0) + k * c
        if gaussian:  # d/dr exp(-r^2/2) = -r exp(-r^2/2)
            d[k + 1] = d.get(k + 1, 0) - c
    return d


def _integrate_product(p, q, shift: int, moments) -> object:
    total = 0
    for a, ca in p.items():
        for b, cb in q.items():
            k = a + b + shift
            if k < 0:
                raise AssertionError("negative moment order")  # excluded by index ranges
            total += ca * cb * moments[k]
    return total


@dataclass(frozen=True, eq=False)
class MatrixSet:
    """Dense symmetric S, T, Q, W over one basis sector.

    Under the exact policy every entry is a rational multiple of pi and the
    common factor is left out (``pi_factored`` is True); generalized
    eigenvalues do not depend on it. Float policies store full values.
    """

    spec: BasisSpec
    r0: Fraction
    policy: ScalarPolicy
    indices: tuple[BasisIndex, ...]
    S: np.ndarray
    T: np.ndarray
    Q: np.ndarray
    W: np.ndarray
    pi_factored: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.indices)

    def hamiltonian(self, lam) -> np.ndarray:
        lam = as_rational(lam)
        if self.policy.kind is PolicyKind.EXACT:
            lam_c = to_mpq(lam)
        elif self.policy.kind is PolicyKind.DOUBLE:
            lam_c = float(lam)
        else:
            with mpmath.workdps(self.policy.digits):
                lam_c = mpmath.mpf(lam.numerator) / lam.denominator
        return self.T + self.Q + self.W * lam_c

    def matrices(self) -> dict[str, np.ndarray]:
        return {"S": self.S, "T": self.T, "Q": self.Q, "W": self.W}


def default_policy(kind: BasisKind) -> ScalarPolicy:
    if BasisKind.parse(kind) is BasisKind.POLYNOMIAL:
        return ScalarPolicy.exact()
    return ScalarPolicy.decimal(50)


def _moments(kind: BasisKind, kmax: int, r0: Fraction, policy: ScalarPolicy):
    if kind is BasisKind.POLYNOMIAL:
        if policy.kind is PolicyKind.EXACT:
            q = to_mpq(r0)
            return [q ** (k + 1) / (k + 1) for k in range(kmax + 1)]
        if policy.kind is PolicyKind.DOUBLE:
            x = float(r0)
            return [x ** (k + 1) / (k + 1) for k in range(kmax + 1)]
        x = mpmath.mpf(r0.numerator) / r0.denominator
        return [x ** (k + 1) / (k + 1) for k in range(kmax + 1)]
    ms = gauss_moments(kmax, r0, max(policy.digits, 16))
    if policy.kind is PolicyKind.DOUBLE:
        return [float(m) for m in ms]
    return ms


def assemble(spec: BasisSpec, r0, policy: ScalarPolicy | None = None) -> MatrixSet:
    """Assemble S, T, Q, W for ``spec`` at box radius ``r0``."""
    policy = policy or default_policy(spec.kind)
    r0 = as_rational(r0)
    if r0 <= 0:
        raise InvalidInput("box radius must be positive")
    gaussian = spec.kind is BasisKind.GAUSSIAN
    if gaussian and policy.kind is PolicyKind.EXACT:
        raise PolicyError("exact rational policy is only valid for the polynomial basis")
    if r0 <= Fraction(1, 10000):
        warnings.warn(f"r0={float(r0):g} gives a badly scaled overlap matrix", AccuracyWarning, stacklevel=2)

    indices = enumerate_basis(spec)
    n = len(indices)
    ctx = mpmath.workdps(policy.digits) if policy.kind is PolicyKind.DECIMAL else nullcontext()
    with ctx:
        moments = _moments(spec.kind, 2 * spec.N + 6, r0, policy)
        if policy.kind is PolicyKind.EXACT:
            r0c, zero, half = to_mpq(r0), gmpy2.mpq(0), gmpy2.mpq(1, 2)
            ang = lambda c: to_mpq(c)  # noqa: E731
        elif policy.kind is PolicyKind.DOUBLE:
            r0c, zero, half = float(r0), 0.0, 0.5
            ang = lambda c: float(c) * np.pi  # noqa: E731
        else:
            r0c = mpmath.mpf(r0.numerator) / r0.denominator
            zero, half = mpmath.mpf(0), mpmath.mpf(1) / 2
            ang = lambda c: (mpmath.mpf(c.numerator) / c.denominator) * mpmath.pi  # noqa: E731

        radial = [_radial_poly(idx.i, r0c) for idx in indices]
        deriv = [_radial_derivative(p, gaussian) for p in radial]
        dtype = float if policy.kind is PolicyKind.DOUBLE else object
        S = np.full((n, n), zero, dtype=dtype)
        T = np.full((n, n), zero, dtype=dtype)
        Q = np.full((n, n), zero, dtype=dtype)
        W = np.full((n, n), zero, dtype=dtype)
        for a, ia in enumerate(indices):
            for b in range(a, n):
                ib = indices[b]
                if ia.j == ib.j:
                    c = ang(angular_overlap(spec.parity, ia.j, ib.j))
                    pa, pb = radial[a], radial[b]
                    S[a, b] = _integrate_product(pa, pb, 1, moments) * c
                    Q[a, b] = half * _integrate_product(pa, pb, 3, moments) * c
                    kin = _integrate_product(deriv[a], deriv[b], 1, moments)
                    if ia.j:
                        kin += ia.j * ia.j * _integrate_product(pa, pb, -1, moments)
                    T[a, b] = half * kin * c
                elif abs(ia.j - ib.j) == 1:
                    c = ang(angular_dipole(spec.parity, ia.j, ib.j))
                    W[a, b] = _integrate_product(radial[a], radial[b], 2, moments) * c
                for M in (S, T, Q, W):
                    M[b, a] = M[a, b]
    return MatrixSet(
        spec=spec,
        r0=r0,
        policy=policy,
        indices=tuple(indices),
        S=S,
        T=T,
        Q=Q,
        W=W,
        pi_factored=policy.kind is PolicyKind.EXACT,
    )


def _cell(x, policy: ScalarPolicy) -> str:
    if policy.kind is PolicyKind.EXACT:
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if policy.kind is PolicyKind.DOUBLE:
        return repr(float(x))
    return mpmath.nstr(x, policy.digits, min_fixed=1, max_fixed=0) if x else "0"


def dump_json(mats: MatrixSet) -> str:
    """Row-major string dump of a MatrixSet (debugging and golden tests).

    Exact entries are written as ``p/q`` rationals so the dump is lossless.
    """
    payload = {
        "spec": {"kind": mats.spec.kind.value, "parity": mats.spec.parity.value, "N": mats.spec.N},
        "r0": str(mats.r0),
        "policy": str(mats.policy),
        "pi_factored": mats.pi_factored,
        "indices": [[idx.i, idx.j] for idx in mats.indices],
        "matrices": {
            name: [[_cell(x, mats.policy) for x in row] for row in M]
            for name, M in mats.matrices().items()
        },
    }
    return json.dumps(payload, indent=1)


def load_json(text: str) -> MatrixSet:
    payload = json.loads(text)
    spec = BasisSpec(payload["spec"]["kind"], payload["spec"]["parity"], payload["spec"]["N"])
    pol = payload["policy"]
    if pol == "exact":
        policy = ScalarPolicy.exact()
        conv = gmpy2.mpq
    elif pol == "double":
        policy = ScalarPolicy.double()
        conv = float
    else:
        policy = ScalarPolicy.decimal(int(pol[len("decimal("):-1]))
        conv = mpmath.mpf
    with mpmath.workdps(max(policy.digits, 16)):
        mats = {
            name: np.array([[conv(x) for x in row] for row in rows], dtype=float if conv is float else object)
            for name, rows in payload["matrices"].items()
        }
    return MatrixSet(
        spec=spec,
        r0=Fraction(payload["r0"]),
        policy=policy,
        indices=tuple(BasisIndex(i, j) for i, j in payload["indices"]),
        pi_factored=payload["pi_factored"],
        **mats,
    )
