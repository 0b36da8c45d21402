from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from confosc.assembly import (
    angular_dipole, angular_overlap, assemble, dump_json, load_json, radial_moment_gauss, radial_moment_poly,
)
from confosc.basis import BasisSpec
from confosc.eigensolver import solve_generalized
from confosc.policy import PolicyError, ScalarPolicy, as_float_array
from confosc.special import AccuracyWarning

from oracles import angular, trapezoid_phi


def test_single_function_matrices():
    m = assemble(BasisSpec("poly", "even", 0), 1)
    assert m.pi_factored
    assert (m.S[0, 0], m.T[0, 0], m.Q[0, 0], m.W[0, 0]) == (Fraction(1, 6), Fraction(1, 2), Fraction(1, 60), 0)
    assert (m.T[0, 0] + m.Q[0, 0]) / m.S[0, 0] == Fraction(31, 10)
    d = assemble(BasisSpec("poly", "even", 0), 1, ScalarPolicy.double())
    assert d.S[0, 0] == pytest.approx(np.pi / 6, rel=1e-15)


def test_angular_examples():
    assert angular_overlap("even", 0, 0) == 2
    assert angular_overlap("even", 2, 2) == 1
    assert angular_overlap("even", 1, 2) == 0
    assert angular_dipole("even", 0, 1) == 1
    assert angular_dipole("odd", 1, 1) == 0
    assert angular_dipole("even", 3, 5) == 0


@given(st.sampled_from(["even", "odd"]), st.integers(0, 6), st.integers(0, 6))
def test_angular_against_trapezoid(parity, j, jp):
    if parity == "odd" and (j == 0 or jp == 0):
        return
    a, b = angular(parity, j), angular(parity, jp)
    with mpmath.workdps(30):
        ovl = trapezoid_phi(lambda t: a(t) * b(t)) / mpmath.pi
        dip = trapezoid_phi(lambda t: a(t) * mpmath.cos(t) * b(t)) / mpmath.pi
    assert abs(ovl - float(angular_overlap(parity, j, jp))) < 1e-25
    assert abs(dip - float(angular_dipole(parity, j, jp))) < 1e-25


def test_radial_moments():
    assert radial_moment_poly(1, 1) == Fraction(1, 2)
    assert radial_moment_poly(5, 2) == Fraction(32, 3)
    assert radial_moment_poly(0, "0.01") == Fraction(1, 100)
    assert abs(radial_moment_gauss(1, 40) - 0.5) < 1e-45
    with pytest.raises(PolicyError):
        radial_moment_gauss(1, 1, ScalarPolicy.exact())


@pytest.mark.parametrize("kind,parity", [("poly", "even"), ("poly", "odd"), ("gauss", "even"), ("gauss", "odd")])
def test_structure(kind, parity):
    m = assemble(BasisSpec(kind, parity, 5), 2)
    js = [b.j for b in m.indices]
    for name, M in m.matrices().items():
        assert all(M[a, b] == M[b, a] for a in range(m.size) for b in range(m.size)), name
    for a in range(m.size):
        for b in range(m.size):
            if js[a] != js[b]:
                assert m.S[a, b] == 0 and m.T[a, b] == 0 and m.Q[a, b] == 0
            if abs(js[a] - js[b]) != 1:
                assert m.W[a, b] == 0


def test_gaussian_rejects_exact_policy():
    with pytest.raises(PolicyError):
        assemble(BasisSpec("gauss", "even", 2), 1, ScalarPolicy.exact())


def test_tiny_box_warns():
    with pytest.warns(AccuracyWarning):
        assemble(BasisSpec("poly", "even", 1), "0.00001")


@given(st.integers(1, 4), st.fractions(min_value="1/4", max_value=4, max_denominator=8))
def test_overlap_scaling(N, s):
    a = assemble(BasisSpec("poly", "even", N), 1)
    b = assemble(BasisSpec("poly", "even", N), s)
    for p, ip in enumerate(a.indices):
        for q, iq in enumerate(a.indices):
            assert b.S[p, q] == a.S[p, q] * s ** (ip.i + iq.i + 4)


@pytest.mark.parametrize("policy", [ScalarPolicy.exact(), ScalarPolicy.double(), ScalarPolicy.decimal(25)])
def test_json_round_trip(policy):
    m = assemble(BasisSpec("poly", "odd", 3), "1.5", policy)
    back = load_json(dump_json(m))
    assert back.spec == m.spec and back.r0 == m.r0 and back.indices == m.indices
    for name, M in m.matrices().items():
        B = back.matrices()[name]
        if policy.kind.value == "exact":
            assert all(x == y for x, y in zip(M.ravel(), B.ravel()))
        else:
            np.testing.assert_allclose(as_float_array(B), as_float_array(M), rtol=1e-15, atol=0)


def test_ten_function_ground_level():
    m = assemble(BasisSpec("poly", "even", 10), 1)
    sp = solve_generalized(m, 0, ScalarPolicy.double(), count=1)
    assert abs(sp.values[0] - 3.0) < 5e-10
