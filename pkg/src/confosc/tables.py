"""Standard benchmark computations and the checked-in golden values."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .basis import BasisKind, BasisSpec
from .eigensolver import convergence_study, sector_spectrum, spectrum
from .model import LevelLabel, ModelParams, Parity, as_rational
from .perturbation import PtExpansion, pt2_sum_over_states, pt_eval, pt_limit_table, rs_expansion
from .policy import PolicyKind, ScalarPolicy
from .reference import large_box_check, small_box_check

SPECTRUM_LAMBDAS = ("0.05",) + tuple(f"{k / 2:.2f}" for k in range(1, 13))
LARGE_BOX_R0 = (1, 2, 3, 4, 5, 6)
LARGE_BOX_LAMBDAS = (1, 2, 3, 4, 5)
LIMIT_R0 = (1, 2, 3, 4, 5)
LIMIT_LABELS = tuple(
    LevelLabel.parse(s) for s in ("0,0,e", "1,0,e", "2,0,e", "0,1,e", "1,1,e", "0,2,e", "0,1,o", "1,1,o", "0,2,o")
)


@lru_cache(maxsize=1)
def golden_values() -> dict:
    """Golden reference values, as decimal strings."""
    text = resources.files("confosc").joinpath("data/golden.json").read_text()
    return json.loads(text)


def spectrum_order(kind, r0) -> int:
    """Basis order that converges the lowest five levels to ~1e-10 for |lam| <= 6."""
    r0 = float(as_rational(r0))
    if BasisKind.parse(kind) is BasisKind.POLYNOMIAL:
        return max(10, math.ceil(6 * r0) + 4)
    return max(20, 4 * math.ceil(r0) + 8)


def pt_order(kind, r0, digits: int = 20) -> int:
    """Basis order for perturbation coefficients of the low levels."""
    r0 = float(as_rational(r0))
    if BasisKind.parse(kind) is BasisKind.POLYNOMIAL:
        base = 22 if digits > 20 else 14
        return max(base, math.ceil(5 * r0) + 10)
    return max(16, math.ceil(2 * r0) + 14)


def auto_kind(r0):
    return BasisKind.POLYNOMIAL if as_rational(r0) <= 3 else BasisKind.GAUSSIAN


def output_policy(digits: int) -> ScalarPolicy:
    """Cheapest policy that carries ``digits`` significant digits."""
    if digits <= 12:
        return ScalarPolicy.double()
    return ScalarPolicy.decimal(max(15, digits + 5))


def even_convergence(policy=None):
    return convergence_study(ModelParams(1, "0.05"), "poly", range(2, 11), policy, count=4, parity="even")


def odd_convergence(policy=None):
    return convergence_study(ModelParams(1, "0.05"), "poly", range(3, 12), policy, count=4, parity="odd")


@dataclass(frozen=True)
class SpectrumRow:
    r0: Fraction
    lam: Fraction
    N: int
    values: list
    labels: list


def spectrum_grid(r0_list=(1, 2, 3), lambdas=SPECTRUM_LAMBDAS, policy=None, kind="poly", count=5, N=None) -> list[SpectrumRow]:
    rows = []
    for r0 in r0_list:
        n = N or spectrum_order(kind, r0)
        for lam in lambdas:
            sp = spectrum(ModelParams(r0, lam), kind, n, policy, count)
            rows.append(SpectrumRow(as_rational(r0), as_rational(lam), n, sp.values, [lv.label for lv in sp.levels]))
    return rows


def small_box(policy=None):
    return small_box_check(Fraction(1, 100), 4, policy)


def large_box(policy=None):
    return large_box_check(LARGE_BOX_R0, LARGE_BOX_LAMBDAS, policy)


def lowest_pt_levels(r0, count: int, kind=None, N=None, policy: ScalarPolicy | None = None, J: int = 1) -> list[PtExpansion]:
    """Perturbation expansions of the ``count`` lowest levels over both sectors.

    Levels are ordered as the energies are at small nonzero lam: by E(0),
    then, within a degenerate pair, by E(2), then even before odd.
    """
    policy = policy or ScalarPolicy.decimal(30)
    kind = BasisKind.parse(kind) if kind else auto_kind(r0)
    digits = policy.digits if policy.kind is PolicyKind.DECIMAL else 16
    N = N or pt_order(kind, r0, digits)
    cands = []
    for parity in (Parity.EVEN, Parity.ODD):
        sp = sector_spectrum(ModelParams(r0, 0), kind, N, parity, policy, count=count)
        cands += list(zip(sp.values, sp.labels))
    cands.sort(key=lambda c: (c[0], c[1].parity is Parity.ODD))
    tol = 10.0 ** (5 - digits)
    cutoff = float(cands[count - 1][0])
    chosen = [c for c in cands if float(c[0]) <= cutoff * (1 + tol) + tol]
    exps = [rs_expansion(r0, lab, BasisSpec(kind, lab.parity, N), policy, J) for _, lab in chosen]
    groups: list[list[PtExpansion]] = []
    for e in exps:
        if groups and abs(float(e.E0) - float(groups[-1][0].E0)) <= tol * max(1.0, abs(float(e.E0))):
            groups[-1].append(e)
        else:
            groups.append([e])
    ordered = []
    for g in groups:
        ordered += sorted(g, key=lambda e: (float(e.E2), e.label.parity is Parity.ODD))
    return ordered[:count]


def pt_coefficients(digits: int = 50, N: int | None = None):
    return lowest_pt_levels(1, 5, "poly", N, ScalarPolicy.decimal(digits))


def pt_limits(r0_list=LIMIT_R0, labels=LIMIT_LABELS, policy=None, kind="gauss"):
    policy = policy or ScalarPolicy.decimal(20)
    rule = lambda k, r0: pt_order(k, r0, policy.digits if policy.kind is PolicyKind.DECIMAL else 16)  # noqa: E731
    return pt_limit_table(labels, r0_list, kind, rule, policy, J=1)


def sos_partials(n_terms: int = 3, policy=None):
    policy = policy or ScalarPolicy.decimal(30)
    return pt2_sum_over_states(1, LevelLabel(0, 0), BasisSpec("poly", "even", pt_order("poly", 1)), policy, n_terms)


@dataclass(frozen=True)
class FigureRow:
    lam: Fraction
    rrm: list
    pt2: list
    labels: list


def figure_series(r0=1, lambdas=("0",) + SPECTRUM_LAMBDAS, count: int = 5, kind=None, N=None,
                  policy: ScalarPolicy | None = None) -> list[FigureRow]:
    """RRM levels and their second-order PT curves on a lam grid."""
    policy = policy or ScalarPolicy.double()
    kind = BasisKind.parse(kind) if kind else auto_kind(r0)
    n_rrm = N or spectrum_order(kind, r0)
    pt_policy = policy if policy.kind is PolicyKind.DECIMAL else ScalarPolicy.decimal(20)
    exps = lowest_pt_levels(r0, count, kind, None, pt_policy, J=1)
    rows = []
    for lam in lambdas:
        sp = spectrum(ModelParams(r0, lam), kind, n_rrm, policy, count)
        pt = [pt_eval(e, lam) for e in exps]
        rows.append(FigureRow(as_rational(lam), sp.values, pt, [e.label for e in exps]))
    return rows
