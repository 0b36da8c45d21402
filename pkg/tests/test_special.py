import warnings

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from confosc.special import AccuracyWarning, gauss_moments


def test_closed_forms():
    m = gauss_moments(1, 1, 30)
    with mpmath.workdps(30):
        assert abs(m[0] - mpmath.sqrt(mpmath.pi) / 2 * mpmath.erf(1)) < mpmath.mpf(10) ** -29
        assert abs(m[1] - (1 - mpmath.exp(-1)) / 2) < mpmath.mpf(10) ** -29
    assert mpmath.nstr(m[1], 9) == "0.316060279"
    assert mpmath.nstr(m[0], 9) == "0.746824133"


def test_wide_box_limit():
    m = gauss_moments(1, 40, 30)
    assert abs(m[1] - mpmath.mpf(1) / 2) < mpmath.mpf(10) ** -29


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 40), st.fractions(min_value="1/10", max_value=8, max_denominator=100))
def test_against_mpmath_gammainc(k, r0):
    digits = 30
    m = gauss_moments(k, r0, digits)[k]
    with mpmath.workdps(digits + 20):
        x = mpmath.mpf(r0.numerator) / r0.denominator
        ref = mpmath.gammainc(mpmath.mpf(k + 1) / 2, 0, x * x) / 2
        assert abs(m - ref) <= abs(ref) * mpmath.mpf(10) ** (3 - digits)


def test_unguarded_recurrence_warns():
    with pytest.warns(AccuracyWarning):
        gauss_moments(80, "0.1", 16, guard=False)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        gauss_moments(80, "0.1", 16)


def test_negative_order_is_empty():
    assert gauss_moments(-1, 1, 20) == []
