import math

import pytest
from hypothesis import given, strategies as st

from confosc.basis import BasisIndex, BasisKind, BasisSpec, EmptyBasis, block_slices, enumerate_basis, evaluate
from confosc.model import InvalidInput


def test_enumeration_examples():
    assert enumerate_basis(BasisSpec("poly", "even", 1)) == [BasisIndex(0, 0), BasisIndex(1, 0), BasisIndex(1, 1)]
    assert enumerate_basis(BasisSpec("poly", "odd", 2)) == [BasisIndex(1, 1), BasisIndex(2, 1), BasisIndex(2, 2)]
    assert len(enumerate_basis(BasisSpec("gauss", "even", 10))) == 66
    with pytest.raises(EmptyBasis):
        enumerate_basis(BasisSpec("poly", "odd", 0))


@given(st.integers(0, 15), st.sampled_from(["even", "odd"]))
def test_enumeration_is_ordered_bijection(N, parity):
    spec = BasisSpec("poly", parity, N)
    if spec.size == 0:
        return
    idx = enumerate_basis(spec)
    assert len(idx) == spec.size == len(set(idx))
    assert idx == sorted(idx, key=lambda b: (b.j, b.i))
    jmin = 0 if parity == "even" else 1
    assert all(jmin <= b.j <= b.i <= N for b in idx)


def test_block_slices_cover_each_j():
    idx = enumerate_basis(BasisSpec("poly", "even", 3))
    sl = block_slices(idx)
    assert list(sl) == [0, 1, 2, 3]
    assert all(all(idx[k].j == j for k in range(s.start, s.stop)) for j, s in sl.items())
    assert sl[3] == slice(9, 10)


def test_kind_aliases():
    assert BasisKind.parse("Gaussian") is BasisKind.GAUSSIAN
    assert BasisKind.parse("poly") is BasisKind.POLYNOMIAL
    with pytest.raises(InvalidInput):
        BasisKind.parse("slater")


def test_evaluate_examples():
    assert evaluate(BasisSpec("poly", "even", 2), BasisIndex(0, 0), 1, 0.5, 1.234) == 0.5
    assert evaluate(BasisSpec("gauss", "even", 2), BasisIndex(1, 1), 1, 0.0, 0.0) == 0
    with pytest.raises(InvalidInput):
        evaluate(BasisSpec("poly", "even", 2), BasisIndex(0, 0), 1, 1.5, 0.0)


@given(st.sampled_from(["poly", "gauss"]), st.sampled_from(["even", "odd"]), st.integers(1, 4),
       st.floats(0.1, 5), st.floats(0, 1), st.floats(-math.pi, math.pi))
def test_wall_and_reflection(kind, parity, i, r0, t, phi):
    spec = BasisSpec(kind, parity, i)
    idx = BasisIndex(i, i)
    assert evaluate(spec, idx, r0, r0, phi) == 0
    r = t * r0
    f, g = evaluate(spec, idx, r0, r, phi), evaluate(spec, idx, r0, r, -phi)
    assert math.isclose(f, g if parity == "even" else -g, abs_tol=1e-14)
