import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from confosc.model import (
    InvalidInput, LevelLabel, ModelParams, Parity, PhysicalInputs, as_rational, large_box_energy, nondimensionalize,
)


def test_as_rational_uses_shortest_repr():
    assert as_rational(0.01) == Fraction(1, 100)
    assert as_rational("0.05") == Fraction(1, 20)
    assert as_rational(3) == 3
    with pytest.raises(InvalidInput):
        as_rational(float("nan"))
    with pytest.raises(InvalidInput):
        as_rational("abc")


def test_model_params_validation():
    p = ModelParams("1", "0.05")
    assert p.r0 == 1 and p.lam == Fraction(1, 20)
    assert p.with_lambda(2).lam == 2
    with pytest.raises(InvalidInput):
        ModelParams(0)
    with pytest.raises(InvalidInput):
        ModelParams(-1, 1)


def test_level_label_rules():
    assert LevelLabel.parse("0,1,o") == LevelLabel(0, 1, Parity.ODD)
    assert LevelLabel.parse("2,0") == LevelLabel(2, 0, Parity.EVEN)
    assert str(LevelLabel(1, 1, "odd")) == "E11(o)"
    with pytest.raises(InvalidInput):
        LevelLabel(0, 0, "odd")
    with pytest.raises(InvalidInput):
        LevelLabel(-1, 0)
    with pytest.raises(InvalidInput):
        LevelLabel.parse("1")


def test_nondimensionalize_examples():
    p, L, E = nondimensionalize(PhysicalInputs(1, 1, 1, 0, 1, 2))
    assert (p.r0, p.lam, L, E) == (2, 0, 1, 1)
    p, _, _ = nondimensionalize(PhysicalInputs(1, 1, 1, 0.05, 1, 1))
    assert p.lam == Fraction(1, 20)
    p, L, E = nondimensionalize(PhysicalInputs(1, 4, 1, 1, 1, 1))
    assert math.isclose(L, 2**-0.5) and E == 2
    assert math.isclose(float(p.lam), 2**-1.5, rel_tol=1e-12)
    assert math.isclose(float(p.r0), math.sqrt(2), rel_tol=1e-12)


@pytest.mark.parametrize("field", ["m", "k", "hbar", "r0_physical"])
def test_nondimensionalize_rejects_non_positive(field):
    kw = dict(m=1, k=1, e=1, f=1, hbar=1, r0_physical=1)
    kw[field] = 0
    with pytest.raises(InvalidInput):
        PhysicalInputs(**kw)


@given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.1, 10))
def test_zero_field_gives_zero_lambda(m, k, hbar, r0):
    p, _, _ = nondimensionalize(PhysicalInputs(m, k, 1, 0, hbar, r0))
    assert p.lam == 0


def test_large_box_energy_examples():
    assert large_box_energy(LevelLabel(0, 0), 0) == 1
    assert large_box_energy(LevelLabel(0, 0), 5) == Fraction(-23, 2)
    assert large_box_energy(LevelLabel(1, 1), 0) == 4


@given(st.integers(0, 5), st.integers(0, 5), st.fractions(-10, 10))
def test_large_box_energy_even_and_ladder(n, nu, lam):
    lab = LevelLabel(n, nu)
    assert large_box_energy(lab, lam) == large_box_energy(lab, -lam)
    assert large_box_energy(LevelLabel(n, nu + 1), lam) - large_box_energy(lab, lam) == 1
