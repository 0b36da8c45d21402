"""Limit spectra: particle in a circular box (r0 -> 0) and the free shifted
oscillator (r0 -> infinity), plus the checks that tie RRM output to them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .basis import BasisKind
from .eigensolver import sector_spectrum
from .model import InvalidInput, LevelLabel, ModelParams, Parity, as_rational, large_box_energy
from .policy import PolicyKind, ScalarPolicy

SERIES_XMAX = 12


class IterationError(ArithmeticError):
    pass


def _digits(policy: ScalarPolicy | None) -> int:
    if policy is None or policy.kind is not PolicyKind.DECIMAL:
        return 20
    return policy.digits


def _out(x, policy: ScalarPolicy | None):
    if policy is not None and policy.kind is PolicyKind.DECIMAL:
        with mpmath.workdps(policy.digits):
            return +x
    return float(x)


def _series_j(nu: int, x) -> mpmath.mpf:
    # terms grow to about exp(x) before cancelling, so the caller adds guard digits
    half = x / 2
    term = half**nu / mpmath.factorial(nu)
    total = term
    q = -half * half
    k = 0
    eps = mpmath.eps
    while True:
        k += 1
        term = term * q / (k * (k + nu))
        total += term
        if abs(term) <= eps * abs(total) and k > half:
            return total


def bessel_j(nu: int, x, policy: ScalarPolicy | None = None):
    """J_nu(x) for integer nu >= 0 and 0 <= x <= 12 by the ascending series."""
    if nu < 0 or int(nu) != nu:
        raise InvalidInput("order must be a non-negative integer")
    digits = _digits(policy)
    with mpmath.workdps(digits + 5):
        x = mpmath.mpf(x)
    if x < 0:
        raise InvalidInput("argument must be >= 0")
    if x > SERIES_XMAX:
        raise InvalidInput(f"ascending series is only used up to x={SERIES_XMAX}")
    guard = int(float(x) / math.log(10)) + 5
    with mpmath.workdps(digits + guard):
        value = _series_j(int(nu), x) if x else mpmath.mpf(1 if nu == 0 else 0)
    return _out(value, policy)


def _bessel_jp(nu: int, x):
    """J_nu'(x) at the current precision."""
    if nu == 0:
        return -_series_j(1, x)
    return _series_j(nu - 1, x) - nu * _series_j(nu, x) / x


def _polish(nu: int, lo, hi, max_iter: int = 200):
    """Newton inside a sign-change bracket, bisecting whenever a step leaves it."""
    flo = _series_j(nu, lo)
    fhi = _series_j(nu, hi)
    if flo * fhi > 0:
        raise IterationError(f"no sign change of J_{nu} on [{lo}, {hi}]")
    x = (lo + hi) / 2
    tol = mpmath.eps * 16
    for _ in range(max_iter):
        f = _series_j(nu, x)
        if f == 0:
            return x
        if (f > 0) == (flo > 0):
            lo, flo = x, f
        else:
            hi = x
        step = f / _bessel_jp(nu, x)
        x_new = x - step
        if not lo < x_new < hi:
            x_new = (lo + hi) / 2
        if abs(x_new - x) <= tol * abs(x_new):
            return x_new
        x = x_new
    raise IterationError(f"zero of J_{nu} did not converge")


@lru_cache(maxsize=256)
def _zero(nu: int, s: int, digits: int):
    with mpmath.workdps(digits + 10):
        if nu == 0:
            # one zero of J_0 in each ((s - 1/2) pi, s pi]
            lo, hi = (s - mpmath.mpf(1) / 2) * mpmath.pi, s * mpmath.pi
        else:
            # interlacing: j(nu-1, s) < j(nu, s) < j(nu-1, s+1)
            lo, hi = _zero(nu - 1, s, digits), _zero(nu - 1, s + 1, digits)
        return _polish(nu, lo, hi)


def bessel_zero(nu: int, s: int, policy: ScalarPolicy | None = None):
    """s-th positive zero of J_nu (s >= 1)."""
    if nu < 0 or s < 1:
        raise InvalidInput("need nu >= 0 and s >= 1")
    z = _zero(int(nu), int(s), _digits(policy))
    if z > SERIES_XMAX:
        raise InvalidInput(f"zero lies beyond x={SERIES_XMAX}")
    return _out(z, policy)


@dataclass(frozen=True)
class BesselZeroTable:
    nu: int
    zeros: tuple


def zero_table(nu: int, count: int, policy: ScalarPolicy | None = None) -> BesselZeroTable:
    return BesselZeroTable(nu, tuple(bessel_zero(nu, s, policy) for s in range(1, count + 1)))


def pib_energy(n: int, nu: int, r0=1, policy: ScalarPolicy | None = None):
    """Particle-in-a-circular-box level j(nu, n+1)**2 / (2 r0**2)."""
    r0 = as_rational(r0)
    if r0 <= 0:
        raise InvalidInput("box radius must be positive")
    digits = _digits(policy)
    z = _zero(int(nu), int(n) + 1, digits)
    with mpmath.workdps(digits + 5):
        value = z * z / 2 / (mpmath.mpf(r0.numerator) / r0.denominator) ** 2
    return _out(value, policy)


# even-sector levels in ascending small-box order
SMALL_BOX_LEVELS = (LevelLabel(0, 0), LevelLabel(0, 1), LevelLabel(0, 2), LevelLabel(1, 0))


@dataclass(frozen=True)
class SmallBoxRow:
    label: LevelLabel
    scaled_energy: float  # r0**2 E
    pib: float
    deviation: float


def small_box_check(r0=Fraction(1, 100), levels: int = 4, policy: ScalarPolicy | None = None,
                    lam=Fraction(1, 20), N: int = 10) -> list[SmallBoxRow]:
    """r0**2 E against the particle-in-a-box levels, even sector.

    The field term scales as r0**3 relative to the wall term, so any moderate
    ``lam`` leaves the limit unchanged.
    """
    if not 1 <= levels <= len(SMALL_BOX_LEVELS):
        raise InvalidInput(f"levels must be 1..{len(SMALL_BOX_LEVELS)}")
    r0 = as_rational(r0)
    policy = policy or ScalarPolicy.double()
    sp = sector_spectrum(ModelParams(r0, lam), BasisKind.POLYNOMIAL, N, Parity.EVEN, policy, count=levels)
    rows = []
    for k in range(levels):
        label = sp.labels[k]
        if label != SMALL_BOX_LEVELS[k]:
            raise ArithmeticError(f"level {k} is {label}, expected {SMALL_BOX_LEVELS[k]}")
        scaled = float(sp.values[k]) * float(r0) ** 2
        pb = pib_energy(label.n, label.nu, 1)
        rows.append(SmallBoxRow(label, scaled, pb, abs(scaled - pb)))
    return rows


def large_box_order(r0) -> int:
    """Gaussian basis order that converges E00 to ~1e-9 for |lam| <= 5."""
    return max(20, 4 * math.ceil(float(as_rational(r0))) + 8)


@dataclass(frozen=True)
class LargeBoxTable:
    r0_list: list
    lambda_list: list
    values: list  # values[i][k] at r0_list[i], lambda_list[k]
    asymptote: list  # 1 - lam**2 / 2, exact
    orders: list


def large_box_check(r0_list, lambda_list, policy: ScalarPolicy | None = None,
                    N_rule=large_box_order) -> LargeBoxTable:
    """Ground level E00(r0, lam) in the Gaussian basis plus the r0 = infinity row."""
    policy = policy or ScalarPolicy.double()
    values, orders = [], []
    for r0 in r0_list:
        N = N_rule(r0)
        orders.append(N)
        row = []
        for lam in lambda_list:
            sp = sector_spectrum(ModelParams(r0, lam), BasisKind.GAUSSIAN, N, Parity.EVEN, policy, count=1)
            row.append(sp.values[0])
        values.append(row)
    asymptote = [large_box_energy(LevelLabel(0, 0), lam) for lam in lambda_list]
    return LargeBoxTable(list(r0_list), list(lambda_list), values, asymptote, orders)
