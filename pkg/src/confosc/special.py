"""Truncated Gaussian radial moments via the lower incomplete gamma function."""

from __future__ import annotations

import math
import warnings

import mpmath


class AccuracyWarning(RuntimeWarning):
    pass


def _recurrence_loss(kmax: int, x: float) -> float:
    # upward recurrence amplifies errors by ~(a+1)/x per step once a > x
    loss = 0.0
    for k in range(2, kmax + 1):
        a = (k - 1) / 2
        if x > 0:
            loss += max(0.0, math.log10((a + 1) / x))
    return loss


def _mpf(x) -> mpmath.mpf:
    if hasattr(x, "denominator") and not isinstance(x, int):
        return mpmath.mpf(int(x.numerator)) / int(x.denominator)
    return mpmath.mpf(x)


def gauss_moments(kmax: int, r0, digits: int, guard: bool = True) -> list:
    """``M_k = int_0^r0 r**k exp(-r**2) dr`` for ``k = 0..kmax``.

    Uses ``M_k = gamma((k+1)/2, r0**2) / 2`` with the upward recurrence
    ``gamma(a+1, x) = a gamma(a, x) - x**a exp(-x)`` started from
    ``gamma(1/2, x) = sqrt(pi) erf(sqrt(x))`` and ``gamma(1, x) = 1 - exp(-x)``.
    The recurrence is unstable for ``a > x``; with ``guard`` the working
    precision is raised by the estimated number of cancelled digits.
    Returned values are mpf at ``digits`` significant digits.
    """
    if kmax < 0:
        return []
    loss = _recurrence_loss(kmax, float(r0) ** 2)
    extra = int(math.ceil(loss)) + 10 if guard else 5
    if not guard and loss > digits - 5:
        warnings.warn(
            f"incomplete-gamma recurrence loses ~{loss:.0f} digits at r0={float(r0):g}; "
            f"only {digits} requested",
            AccuracyWarning,
            stacklevel=2,
        )
    with mpmath.workdps(digits + extra):
        x = _mpf(r0) ** 2
        ex = mpmath.exp(-x)
        g = [mpmath.sqrt(mpmath.pi) * mpmath.erf(mpmath.sqrt(x)), 1 - ex]
        for k in range(2, kmax + 1):
            a = mpmath.mpf(k - 1) / 2
            g.append(a * g[k - 2] - x**a * ex)
        out = [gk / 2 for gk in g[: kmax + 1]]
    with mpmath.workdps(digits):
        return [+m for m in out]
