from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from confosc.model import InvalidInput
from confosc.policy import ScalarPolicy
from confosc.reference import (
    bessel_j, bessel_zero, large_box_check, pib_energy, small_box_check, zero_table,
)

D30 = ScalarPolicy.decimal(30)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 6), st.floats(0, 12))
def test_bessel_j_against_mpmath(nu, x):
    got = bessel_j(nu, x, D30)
    with mpmath.workdps(40):
        ref = mpmath.besselj(nu, x)
    assert abs(got - ref) < mpmath.mpf(10) ** -27


def test_bessel_j_domain():
    assert bessel_j(0, 0) == 1.0 and bessel_j(3, 0) == 0.0
    for bad in ((-1, 1), (0, -1), (0, 13)):
        with pytest.raises(InvalidInput):
            bessel_j(*bad)


@pytest.mark.parametrize("nu,s", [(0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (4, 1)])
def test_zeros_against_mpmath(nu, s):
    got = bessel_zero(nu, s, D30)
    with mpmath.workdps(40):
        ref = mpmath.besseljzero(nu, s)
    assert abs(got - ref) < mpmath.mpf(10) ** -27


def test_zero_properties():
    for nu in range(4):
        t = zero_table(nu, 2)
        for z in t.zeros:
            assert abs(bessel_j(nu, z)) <= 1e-12
            assert bessel_j(nu, z - 1e-6) * bessel_j(nu, z + 1e-6) < 0
        assert list(t.zeros) == sorted(t.zeros)
    # interlacing of consecutive orders
    for nu in range(1, 4):
        assert bessel_zero(nu - 1, 1) < bessel_zero(nu, 1) < bessel_zero(nu - 1, 2)
    with pytest.raises(InvalidInput):
        bessel_zero(0, 0)


def test_pib_energies():
    assert abs(bessel_zero(0, 1) - 2.404825557695773) < 1e-14
    assert f"{pib_energy(0, 0):.9f}" == "2.891592981"
    assert f"{pib_energy(0, 1):.9f}" == "7.340985321"
    assert f"{pib_energy(0, 2):.8f}" == "13.18730821"
    assert f"{pib_energy(1, 0):.8f}" == "15.23563117"
    assert pib_energy(0, 0, 2) == pytest.approx(pib_energy(0, 0) / 4)
    with pytest.raises(InvalidInput):
        pib_energy(0, 0, 0)


def test_small_box_limit_is_field_independent():
    a = small_box_check(Fraction(1, 100), 4, lam=Fraction(1, 20))
    b = small_box_check(Fraction(1, 100), 4, lam=0)
    assert [r.pib for r in a] == sorted(r.pib for r in a)
    assert all(r.deviation / r.pib < 2e-8 for r in a)
    assert max(abs(x.scaled_energy - y.scaled_energy) for x, y in zip(a, b)) < 1e-9


def test_small_box_deviation_shrinks():
    d = [max(r.deviation for r in small_box_check(r0, 2)) for r0 in ("0.2", "0.1", "0.05")]
    assert d[0] > d[1] > d[2]
    with pytest.raises(InvalidInput):
        small_box_check(Fraction(1, 100), 5)


def test_large_box_examples_and_trend():
    t = large_box_check([3, 4, 5], [1, 3, 5])
    assert t.values[1][1] == pytest.approx(-3.2281562207, rel=1e-9)
    assert t.values[2][2] == pytest.approx(-10.4347543324, rel=1e-9)
    assert t.asymptote == [Fraction(1, 2), Fraction(-7, 2), Fraction(-23, 2)]
    for k, a in enumerate(t.asymptote):
        col = [row[k] for row in t.values]
        assert all(x > y > float(a) for x, y in zip(col, col[1:]))
    gaps = [[v - float(a) for v, a in zip(row, t.asymptote)] for row in t.values]
    assert all(row == sorted(row) for row in gaps)
