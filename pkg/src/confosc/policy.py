"""Scalar precision policies and conversions between number types."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import mpmath
import numpy as np

from .model import InvalidInput


class PolicyError(InvalidInput):
    pass


class PolicyKind(enum.Enum):
    EXACT = "exact"
    DECIMAL = "decimal"
    DOUBLE = "double"


@dataclass(frozen=True)
class ScalarPolicy:
    """How scalars are represented.

    ``EXACT`` keeps matrix entries as rationals (polynomial basis only),
    ``DECIMAL`` uses mpmath floats with ``digits`` significant digits and
    ``DOUBLE`` uses binary64.
    """

    kind: PolicyKind
    digits: int = 16

    def __post_init__(self):
        if self.kind is PolicyKind.DECIMAL and self.digits < 15:
            raise PolicyError("decimal policy needs at least 15 digits")

    @classmethod
    def exact(cls) -> "ScalarPolicy":
        return cls(PolicyKind.EXACT, 0)

    @classmethod
    def decimal(cls, digits: int = 30) -> "ScalarPolicy":
        return cls(PolicyKind.DECIMAL, digits)

    @classmethod
    def double(cls) -> "ScalarPolicy":
        return cls(PolicyKind.DOUBLE, 16)

    @property
    def eps(self) -> float:
        if self.kind is PolicyKind.EXACT:
            return 0.0
        if self.kind is PolicyKind.DOUBLE:
            return float(np.finfo(float).eps)
        return 10.0 ** (1 - self.digits)

    @property
    def is_float(self) -> bool:
        return self.kind is not PolicyKind.EXACT

    def __str__(self) -> str:
        if self.kind is PolicyKind.DECIMAL:
            return f"decimal({self.digits})"
        return self.kind.value


def to_mpq(x) -> gmpy2.mpq:
    if isinstance(x, Fraction):
        return gmpy2.mpq(x.numerator, x.denominator)
    return gmpy2.mpq(x)


def mpq_to_mpf(q) -> mpmath.mpf:
    """Round a rational to the current mpmath precision (single rounding)."""
    num, den = int(q.numerator), int(q.denominator)
    if den == 1:
        return mpmath.mpf(num)
    return mpmath.mpf(num) / den


def as_mpf_array(a: np.ndarray) -> np.ndarray:
    """Elementwise conversion of an object/float array to mpf, at current precision."""
    out = np.empty(a.shape, dtype=object)
    flat_in = a.ravel()
    flat_out = out.ravel()
    for k, x in enumerate(flat_in):
        if isinstance(x, mpmath.mpf):
            flat_out[k] = +x
        elif hasattr(x, "denominator") and not isinstance(x, (int, float)):
            flat_out[k] = mpq_to_mpf(x)
        else:
            flat_out[k] = mpmath.mpf(x)
    return out


def as_float_array(a: np.ndarray) -> np.ndarray:
    if a.dtype != object:
        return np.asarray(a, dtype=float)
    return np.array([float(x) for x in a.ravel()], dtype=float).reshape(a.shape)
