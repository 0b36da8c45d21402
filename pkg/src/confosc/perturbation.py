"""Perturbation series in the field strength from finite-basis unperturbed states.

The unperturbed problem H0 = T + Q is diagonalized block by block in the
orthonormal reduced basis of each parity sector, and the dipole operator is
rotated into that eigenbasis. Everything below then works with plain
vectors: a sum over states for the second-order coefficient and a
nondegenerate Rayleigh-Schroedinger recursion for higher orders.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .assembly import default_policy
from .basis import BasisKind, BasisSpec
from .eigensolver import (
    GUARD_DIGITS,
    DegeneracyError,
    SectorReduction,
    block_spectrum,
    cached_assembly,
    reduce_sector,
)
from .model import InvalidInput, LevelLabel, Parity, as_rational
from .policy import PolicyError, PolicyKind, ScalarPolicy, as_float_array

DEFAULT_J = 5
SOS_CUTOFF = 1e-12


class TrendWarning(RuntimeWarning):
    pass


class OddOrderError(ArithmeticError):
    """An odd-order coefficient failed to vanish."""


@dataclass(frozen=True)
class PtExpansion:
    r0: Fraction
    label: LevelLabel
    coefficients: list  # E(0), E(2), ..., E(2J)
    J: int
    policy: ScalarPolicy
    odd_residual: float = 0.0

    @property
    def E0(self):
        return self.coefficients[0]

    @property
    def E2(self):
        return self.coefficients[1] if len(self.coefficients) > 1 else 0


def _check_policy(policy: ScalarPolicy) -> ScalarPolicy:
    if policy.kind is PolicyKind.EXACT:
        raise PolicyError("perturbation coefficients are not rational; use a decimal or double policy")
    return policy


def _work_digits(policy: ScalarPolicy) -> int:
    return 20 if policy.kind is PolicyKind.DOUBLE else policy.digits + GUARD_DIGITS


def _sector(r0, label: LevelLabel, spec: BasisSpec, policy: ScalarPolicy) -> SectorReduction:
    if Parity.parse(spec.parity) is not label.parity:
        raise InvalidInput(f"label {label} does not belong to the {spec.parity.value} sector")
    kind = BasisKind.parse(spec.kind)
    assembly_policy = default_policy(kind)
    if kind is BasisKind.GAUSSIAN and policy.kind is PolicyKind.DECIMAL:
        assembly_policy = ScalarPolicy.decimal(max(50, policy.digits + 2 * GUARD_DIGITS))
    mats = cached_assembly(spec, as_rational(r0), assembly_policy)
    red = reduce_sector(mats, _work_digits(policy))
    if label.nu not in red.blocks:
        raise InvalidInput(f"basis of order {spec.N} has no angular block {label.nu}")
    if label.n >= red.dims[label.nu]:
        raise InvalidInput(f"level {label} lies beyond the {red.dims[label.nu]} functions of its block")
    return red


def _eigpairs(red: SectorReduction, j: int, policy: ScalarPolicy):
    w, Y = block_spectrum(red, j, policy)
    if policy.kind is PolicyKind.DOUBLE:
        return np.asarray(w, dtype=float), np.asarray(Y, dtype=float)
    return np.array(list(w), dtype=object), Y


def _coupling(red: SectorReduction, j: int, policy: ScalarPolicy, Y: dict) -> np.ndarray:
    """Dipole matrix between the H0 eigenvectors of blocks j and j+1."""
    key = ("coupling", j, policy)
    cache = red.mats.extra
    if key not in cache:
        CW = red.CW[j]
        if policy.kind is PolicyKind.DOUBLE:
            CW = as_float_array(CW)
        cache[key] = Y[j].T @ CW @ Y[j + 1]
    return cache[key]


def _degeneracy_tol(policy: ScalarPolicy, E0) -> float:
    return 1e3 * policy.eps * max(1.0, abs(float(E0)))


def pt2_sum_over_states(r0, label: LevelLabel, spec: BasisSpec, policy: ScalarPolicy | None = None,
                        n_terms: int | None = None):
    """Second-order coefficient as a sum over unperturbed states.

    Returns ``(E2, terms)`` with the terms in decreasing magnitude. The sum
    stops after ``n_terms`` terms, when the next term is below 1e-12 of the
    running sum, or when the basis runs out.
    """
    policy = _check_policy(policy or ScalarPolicy.decimal(30))
    if n_terms is not None and n_terms < 1:
        raise InvalidInput("n_terms must be >= 1")
    red = _sector(r0, label, spec, policy)
    nu, n = label.nu, label.n
    with mpmath.workdps(red.digits):
        w, Y = {}, {}
        for j in (nu - 1, nu, nu + 1):
            if j in red.blocks:
                w[j], Y[j] = _eigpairs(red, j, policy)
        E0 = w[nu][n]
        tol = _degeneracy_tol(policy, E0)
        terms = []
        for jp in (nu - 1, nu + 1):
            if jp not in w:
                continue
            V = _coupling(red, nu, policy, Y)[n, :] if jp == nu + 1 else _coupling(red, jp, policy, Y)[:, n]
            for k in range(len(w[jp])):
                gap = E0 - w[jp][k]
                if abs(gap) <= tol:
                    raise DegeneracyError(f"{label} is degenerate with level {k} of block {jp}")
                terms.append(V[k] * V[k] / gap)
        terms.sort(key=lambda t: -abs(t))
        kept = []
        total = terms[0] * 0 if terms else 0
        for t in terms:
            if n_terms is not None and len(kept) >= n_terms:
                break
            if kept and abs(t) < SOS_CUTOFF * abs(total):
                break
            kept.append(t)
            total += t
        if policy.kind is PolicyKind.DECIMAL:
            with mpmath.workdps(policy.digits):
                total = +total
                kept = [+t for t in kept]
        else:
            total = float(total)
            kept = [float(t) for t in kept]
    return total, kept


def _block_range(red: SectorReduction, nu: int, reach: int) -> list[int]:
    return [j for j in red.js if abs(j - nu) <= reach]


def rs_expansion(r0, label: LevelLabel, spec: BasisSpec, policy: ScalarPolicy | None = None,
                 J: int = DEFAULT_J, odd_tol: float | None = None) -> PtExpansion:
    """Rayleigh-Schroedinger coefficients E(0), E(2), ..., E(2J) for one level.

    Uses intermediate normalization <0|psi(k)> = 0 and the recursion

        E(k)   = <0|V|psi(k-1)>
        psi(k) = R [V psi(k-1) - sum_{m=1..k} E(m) psi(k-m)],

    with the reduced resolvent R = sum_{l != 0} |l><l| / (E0 - E_l) over the
    finite spectrum of the sector. Odd coefficients are computed, checked
    against ``odd_tol`` and dropped.
    """
    policy = _check_policy(policy or ScalarPolicy.decimal(30))
    if J < 1:
        raise InvalidInput("J must be >= 1")
    red = _sector(r0, label, spec, policy)
    nu, n = label.nu, label.n
    order = 2 * J
    # psi(k) only reaches blocks within k of nu; E(2J) needs psi(2J-1)
    js = _block_range(red, nu, order - 1)
    with mpmath.workdps(red.digits):
        w, Y = {}, {}
        for j in js:
            w[j], Y[j] = _eigpairs(red, j, policy)
        off, o = {}, 0
        for j in js:
            off[j] = o
            o += len(w[j])
        dim = o
        obj = policy.kind is not PolicyKind.DOUBLE
        zero = mpmath.mpf(0) if obj else 0.0
        energies = np.concatenate([w[j] for j in js])
        V = {}
        for j in js:
            if j + 1 in w:
                V[j] = _coupling(red, j, policy, Y)

        def apply_v(x):
            y = np.full(dim, zero, dtype=object if obj else float)
            for j, Vj in V.items():
                a = slice(off[j], off[j] + len(w[j]))
                b = slice(off[j + 1], off[j + 1] + len(w[j + 1]))
                y[a] = y[a] + Vj @ x[b]
                y[b] = y[b] + Vj.T @ x[a]
            return y

        i0 = off[nu] + n
        E0 = energies[i0]
        tol = _degeneracy_tol(policy, E0)
        denom = np.full(dim, zero, dtype=object if obj else float)
        for l in range(dim):
            if l == i0:
                continue
            gap = E0 - energies[l]
            if abs(gap) <= tol:
                raise DegeneracyError(f"{label} is degenerate with a level of its sector")
            denom[l] = 1 / gap

        psi = [np.full(dim, zero, dtype=object if obj else float)]
        psi[0][i0] = mpmath.mpf(1) if obj else 1.0
        E = [E0]
        for k in range(1, order + 1):
            Vpsi = apply_v(psi[k - 1])
            E.append(Vpsi[i0])
            if k == order:
                break
            rhs = Vpsi
            for m in range(1, k + 1):
                if E[m]:
                    rhs = rhs - psi[k - m] * E[m]
            nxt = rhs * denom
            nxt[i0] = zero
            psi.append(nxt)
        odd = max((abs(float(E[k])) for k in range(1, order + 1, 2)), default=0.0)
        limit = 1e3 * policy.eps * max(1.0, abs(float(E0))) if odd_tol is None else odd_tol
        if odd > limit:
            raise OddOrderError(f"odd-order coefficient {odd:.3e} exceeds {limit:.1e}")
        coeffs = [E[k] for k in range(0, order + 1, 2)]
        if policy.kind is PolicyKind.DECIMAL:
            with mpmath.workdps(policy.digits):
                coeffs = [+c for c in coeffs]
        else:
            coeffs = [float(c) for c in coeffs]
    return PtExpansion(as_rational(r0), label, coeffs, J, policy, odd)


def pt_eval(exp: PtExpansion, lam):
    """Partial sum of the even series at ``lam``."""
    if exp.policy.kind is PolicyKind.DECIMAL:
        with mpmath.workdps(exp.policy.digits):
            x = mpmath.mpf(as_rational(lam).numerator) / as_rational(lam).denominator
            x2 = x * x
            total = mpmath.mpf(0)
            for c in reversed(exp.coefficients):
                total = total * x2 + c
            return +total
    x2 = float(lam) ** 2
    total = 0.0
    for c in reversed(exp.coefficients):
        total = total * x2 + float(c)
    return total


def default_order(kind, r0) -> int:
    """Basis order that converges the low levels used in the limit tables."""
    r0 = float(as_rational(r0))
    if BasisKind.parse(kind) is BasisKind.POLYNOMIAL:
        return max(14, int(5 * r0) + 10)
    return max(16, int(3 * r0) + 14)


@dataclass(frozen=True)
class LimitRow:
    r0: Fraction
    label: LevelLabel
    E0: object
    E2: object


def pt_limit_table(labels, r0_list, kind="gauss", N_rule=default_order,
                   policy: ScalarPolicy | None = None, J: int = 1, check_trend: bool = True) -> list[LimitRow]:
    """E(0) and E(2) for each label over increasing box radii.

    With ``check_trend`` a TrendWarning is issued for any label whose rows do
    not approach 2n+nu+1 and -1/2 monotonically. E(2) of some excited states
    overshoots first, so this is a diagnostic, not an error.
    """
    policy = _check_policy(policy or ScalarPolicy.decimal(30))
    kind = BasisKind.parse(kind)
    r0s = [as_rational(r) for r in r0_list]
    if r0s != sorted(r0s):
        raise InvalidInput("r0 list must be ascending")
    rows = []
    for label in labels:
        if isinstance(label, str):
            label = LevelLabel.parse(label)
        series = []
        for r0 in r0s:
            spec = BasisSpec(kind, label.parity, N_rule(kind, r0))
            exp = rs_expansion(r0, label, spec, policy, J)
            series.append(LimitRow(r0, label, exp.E0, exp.E2))
        if check_trend:
            _check_trend(label, series)
        rows += series
    return rows


def _check_trend(label: LevelLabel, series: list[LimitRow]) -> None:
    target0 = 2 * label.n + label.nu + 1
    gap0 = [abs(float(r.E0) - target0) for r in series]
    gap2 = [abs(float(r.E2) + 0.5) for r in series]
    for name, gaps in (("E(0)", gap0), ("E(2)", gap2)):
        for a, b in zip(gaps, gaps[1:]):
            if b > a + 1e-12:
                warnings.warn(f"{name} of {label} does not approach its large-box limit monotonically",
                              TrendWarning, stacklevel=3)
                break
