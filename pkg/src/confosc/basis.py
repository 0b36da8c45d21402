"""Polynomial and Gaussian-weighted basis families.

A basis function is ``r**i * (r0 - r) * [exp(-r**2/2)] * A_j(phi)`` with
``A_j = cos(j phi)`` in the even sector and ``sin(j phi)`` in the odd one.
Functions are not normalized; the overlap matrix carries that information.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .model import InvalidInput, Parity


class BasisKind(enum.Enum):
    POLYNOMIAL = "poly"
    GAUSSIAN = "gauss"

    @classmethod
    def parse(cls, value) -> "BasisKind":
        if isinstance(value, BasisKind):
            return value
        aliases = {"polynomial": "poly", "gaussian": "gauss"}
        value = aliases.get(str(value).lower(), str(value).lower())
        try:
            return cls(value)
        except ValueError:
            raise InvalidInput(f"unknown basis kind {value!r}") from None


class EmptyBasis(InvalidInput):
    pass


@dataclass(frozen=True)
class BasisIndex:
    i: int  # radial power
    j: int  # angular frequency


@dataclass(frozen=True)
class BasisSpec:
    kind: BasisKind
    parity: Parity
    N: int

    def __post_init__(self):
        object.__setattr__(self, "kind", BasisKind.parse(self.kind))
        object.__setattr__(self, "parity", Parity.parse(self.parity))
        if self.N < 0:
            raise InvalidInput("truncation order must be >= 0")

    @property
    def jmin(self) -> int:
        return 0 if self.parity is Parity.EVEN else 1

    @property
    def size(self) -> int:
        if self.parity is Parity.EVEN:
            return (self.N + 1) * (self.N + 2) // 2
        return self.N * (self.N + 1) // 2

    def with_order(self, N: int) -> "BasisSpec":
        return BasisSpec(self.kind, self.parity, N)


def enumerate_basis(spec: BasisSpec) -> list[BasisIndex]:
    """Indices in j-major order: ascending j, then ascending i >= j."""
    if spec.size == 0:
        raise EmptyBasis(f"{spec.parity.value} sector with N={spec.N} is empty")
    return [BasisIndex(i, j) for j in range(spec.jmin, spec.N + 1) for i in range(j, spec.N + 1)]


def block_slices(indices: list[BasisIndex]) -> dict[int, slice]:
    """Contiguous index range of every angular block ``j``."""
    out: dict[int, slice] = {}
    start = 0
    for pos in range(1, len(indices) + 1):
        if pos == len(indices) or indices[pos].j != indices[start].j:
            out[indices[start].j] = slice(start, pos)
            start = pos
    return out


def evaluate(spec: BasisSpec, idx: BasisIndex, r0, r: float, phi: float) -> float:
    r0 = float(r0)
    if r < 0 or r > r0:
        raise InvalidInput(f"r={r} outside [0, {r0}]")
    radial = r**idx.i * (r0 - r)
    if spec.kind is BasisKind.GAUSSIAN:
        radial *= math.exp(-0.5 * r * r)
    if spec.parity is Parity.EVEN:
        return radial * math.cos(idx.j * phi)
    return radial * math.sin(idx.j * phi)
