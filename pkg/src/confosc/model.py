"""Dimensionless model of the confined oscillator and level labels.

Everything downstream works with the dimensionless Hamiltonian

    H = -1/2 lap + 1/2 r**2 + lam * r * cos(phi),   psi(r0, phi) = 0,

where lengths are measured in units of sqrt(hbar / (m omega)) and energies
in units of hbar * omega.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


class InvalidInput(ValueError):
    """Raised for parameters outside the model's domain."""


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def parse(cls, value: "Parity | str") -> "Parity":
        if isinstance(value, Parity):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidInput(f"unknown parity {value!r}") from None

    @property
    def tag(self) -> str:
        return "e" if self is Parity.EVEN else "o"


def as_rational(x) -> Fraction:
    """Exact rational for ``x``; floats go through their shortest repr.

    ``0.01`` therefore becomes ``1/100`` rather than the binary expansion of
    the double closest to it.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InvalidInput(f"non-finite value {x!r}")
        return Fraction(repr(x))
    try:
        return Fraction(str(x))
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"cannot interpret {x!r} as a real number") from None


@dataclass(frozen=True)
class ModelParams:
    """Box radius and field strength of one Hamiltonian instance.

    Both are kept as exact rationals so the polynomial basis can be
    assembled without rounding.
    """

    r0: Fraction
    lam: Fraction = Fraction(0)

    def __init__(self, r0, lam=0):
        r0 = as_rational(r0)
        lam = as_rational(lam)
        if r0 <= 0:
            raise InvalidInput(f"box radius must be positive, got {r0}")
        object.__setattr__(self, "r0", r0)
        object.__setattr__(self, "lam", lam)

    def with_lambda(self, lam) -> "ModelParams":
        return ModelParams(self.r0, lam)


@dataclass(frozen=True)
class PhysicalInputs:
    m: float
    k: float
    e: float
    f: float
    hbar: float
    r0_physical: float

    def __post_init__(self):
        for name in ("m", "k", "e", "hbar", "r0_physical"):
            if not getattr(self, name) > 0:
                raise InvalidInput(f"{name} must be strictly positive")
        if self.f < 0:
            raise InvalidInput("field magnitude f must be non-negative")


@dataclass(frozen=True, order=True)
class LevelLabel:
    """Quantum numbers of the field-free state a level is continued from."""

    n: int
    nu: int
    parity: Parity = Parity.EVEN

    def __post_init__(self):
        object.__setattr__(self, "parity", Parity.parse(self.parity))
        if self.n < 0 or self.nu < 0:
            raise InvalidInput("quantum numbers must be non-negative")
        if self.parity is Parity.ODD and self.nu < 1:
            raise InvalidInput("odd states need nu >= 1")

    def __str__(self) -> str:
        return f"E{self.n}{self.nu}({self.parity.tag})"

    @classmethod
    def parse(cls, text: str) -> "LevelLabel":
        """Parse ``"n,nu,e"`` / ``"0,1,odd"`` style labels."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) not in (2, 3):
            raise InvalidInput(f"bad level label {text!r}")
        parity = parts[2] if len(parts) == 3 else "even"
        parity = {"e": "even", "o": "odd"}.get(parity, parity)
        return cls(int(parts[0]), int(parts[1]), Parity.parse(parity))


def nondimensionalize(phys: PhysicalInputs) -> tuple[ModelParams, float, float]:
    """Return ``(params, length_unit, energy_unit)`` for physical inputs."""
    omega = math.sqrt(phys.k / phys.m)
    length = math.sqrt(phys.hbar / (phys.m * omega))
    energy = phys.hbar * omega
    lam = phys.m * phys.e * phys.f * length**3 / phys.hbar**2
    return ModelParams(phys.r0_physical / length, lam), length, energy


def large_box_energy(label: LevelLabel, lam) -> Fraction:
    """Unconfined limit ``2n + nu + 1 - lam**2 / 2`` (shifted free oscillator)."""
    lam = as_rational(lam)
    return Fraction(2 * label.n + label.nu + 1) - lam * lam / 2
