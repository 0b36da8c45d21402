"""Generalized symmetric-definite eigenproblem ``H(lam) c = E S c``.

The matrices are block structured in the angular index ``j``: S, T and Q are
block diagonal and W only couples ``j`` to ``j +- 1``. Each overlap block is
reduced on its own (exact LDL^T for rational input, Cholesky or canonical
orthogonalization otherwise) to ``X_j`` with ``X_j^T S_j X_j = I``. In that
basis the problem becomes the standard symmetric one

    C(lam) = blockdiag(X_j^T (T+Q)_j X_j) + lam * X^T W X,

which is well conditioned even when S is not. It is diagonalized by tridiagonal
QL in float64 and by cyclic Jacobi in extended precision.
"""

from __future__ import annotations

import math
import warnings
from contextlib import nullcontext
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
import numpy as np

from .assembly import MatrixSet, assemble, default_policy
from .basis import BasisKind, BasisSpec, block_slices
from .linalg import (
    NotPositiveDefinite,
    RankError,
    canonical_orthogonalization,
    cholesky,
    inv_lower,
    ldl_exact,
    sym_eigh,
)
from .model import InvalidInput, LevelLabel, ModelParams, Parity, as_rational
from .policy import (
    PolicyError,
    PolicyKind,
    ScalarPolicy,
    as_float_array,
    as_mpf_array,
    mpq_to_mpf,
)
from .special import AccuracyWarning

GUARD_DIGITS = 10
DEFAULT_COUNT = 5


class DegeneracyError(ArithmeticError):
    pass


@dataclass(frozen=True, eq=False)
class SectorReduction:
    """Per-block orthonormalizing transforms and the reduced Hamiltonian pieces."""

    mats: MatrixSet
    digits: int
    blocks: dict[int, slice]
    X: dict[int, np.ndarray]
    C0: dict[int, np.ndarray]
    CW: dict[int, np.ndarray]
    condition_estimate: float
    canonical: bool = False

    @property
    def js(self) -> list[int]:
        return sorted(self.blocks)

    @property
    def dims(self) -> dict[int, int]:
        return {j: self.X[j].shape[1] for j in self.js}

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    def offsets(self) -> dict[int, int]:
        out, o = {}, 0
        for j in self.js:
            out[j] = o
            o += self.dims[j]
        return out


def _tau(eps: float) -> float:
    return 1e-2 * math.sqrt(eps)


def reduce_sector(mats: MatrixSet, digits: int = 30) -> SectorReduction:
    """Reduce every angular block of ``mats`` to orthonormal form.

    Exact input is factored in rational arithmetic, so the result is only
    rounded once, to ``digits``. Float input is factored at its own
    precision, with canonical orthogonalization for blocks whose Cholesky
    pivots break down.
    """
    key = ("reduction", digits)
    if key in mats.extra:
        return mats.extra[key]
    blocks = block_slices(list(mats.indices))
    js = sorted(blocks)
    X: dict[int, np.ndarray] = {}
    C0: dict[int, np.ndarray] = {}
    CW: dict[int, np.ndarray] = {}
    cond = 1.0
    canonical = False
    kind = mats.policy.kind
    if kind is PolicyKind.EXACT:
        H0 = mats.T + mats.Q
        Li: dict[int, np.ndarray] = {}
        M0: dict[int, np.ndarray] = {}
        Dq: dict[int, list] = {}
        for j in js:
            b = blocks[j]
            Sj = mats.S[b, b]
            L, D = ldl_exact(Sj)
            Li[j] = inv_lower(L)
            M0[j] = Li[j] @ H0[b, b] @ Li[j].T
            Dq[j] = D
            cond = max(cond, max(float(Sj[k, k] / D[k]) for k in range(len(D))))
        with mpmath.workdps(digits):
            root = {j: [mpmath.sqrt(mpq_to_mpf(d)) for d in Dq[j]] for j in js}
            for j in js:
                inv_root = np.array([1 / x for x in root[j]], dtype=object)
                X[j] = as_mpf_array(Li[j].T) * inv_root[None, :]
                C0[j] = as_mpf_array(M0[j]) * np.outer(inv_root, inv_root)
            for j in js:
                if j + 1 in blocks:
                    Mw = Li[j] @ mats.W[blocks[j], blocks[j + 1]] @ Li[j + 1].T
                    inv_a = np.array([1 / x for x in root[j]], dtype=object)
                    inv_b = np.array([1 / x for x in root[j + 1]], dtype=object)
                    CW[j] = as_mpf_array(Mw) * np.outer(inv_a, inv_b)
    else:
        work = mats.policy.digits if kind is PolicyKind.DECIMAL else None
        ctx = mpmath.workdps(work) if work else nullcontext()
        with ctx:
            H0 = mats.T + mats.Q
            for j in js:
                b = blocks[j]
                Sj = mats.S[b, b]
                try:
                    X[j], cj = _cholesky_transform(Sj, mats.policy.eps)
                except NotPositiveDefinite:
                    X[j] = canonical_orthogonalization(Sj, _tau(mats.policy.eps))
                    cj = float("inf")
                    canonical = True
                cond = max(cond, cj)
                C0[j] = _sym(X[j].T @ H0[b, b] @ X[j])
            for j in js:
                if j + 1 in blocks:
                    CW[j] = X[j].T @ mats.W[blocks[j], blocks[j + 1]] @ X[j + 1]
        if work and digits < work:
            with mpmath.workdps(digits):
                X = {j: as_mpf_array(v) for j, v in X.items()}
                C0 = {j: as_mpf_array(v) for j, v in C0.items()}
                CW = {j: as_mpf_array(v) for j, v in CW.items()}
        if work and math.isfinite(cond) and math.log10(cond) > work - 12:
            warnings.warn(
                f"overlap condition ~1e{math.log10(cond):.0f} exhausts the "
                f"{work}-digit assembly precision",
                AccuracyWarning,
                stacklevel=2,
            )
    red = SectorReduction(mats, digits, blocks, X, C0, CW, cond, canonical)
    mats.extra[key] = red
    return red


def _sym(M: np.ndarray) -> np.ndarray:
    return (M + M.T) / 2


def _cholesky_transform(Sj: np.ndarray, eps: float):
    n = Sj.shape[0]
    obj = Sj.dtype == object
    root = mpmath.sqrt if obj else math.sqrt
    scale = np.array([1 / root(Sj[k, k]) for k in range(n)], dtype=Sj.dtype)
    St = Sj * np.outer(scale, scale)
    L = cholesky(St, rel_pivot_tol=_tau(eps))
    cond = max(float(1 / (L[k, k] * L[k, k])) for k in range(n))
    X = inv_lower(L).T * scale[:, None]
    return X, cond


def reduced_matrix(red: SectorReduction, lam, as_float: bool = False) -> np.ndarray:
    """Dense ``C(lam)`` in the reduced basis."""
    lam = as_rational(lam)
    n = red.dim
    off = red.offsets()
    obj = not as_float and any(v.dtype == object for v in red.C0.values())
    with mpmath.workdps(red.digits):
        if obj:
            C = np.empty((n, n), dtype=object)
            C[:, :] = mpmath.mpf(0)
            lam_c = mpq_to_mpf(lam)
        else:
            C = np.zeros((n, n))
            lam_c = float(lam)
        conv = as_float_array if not obj else (lambda a: a)
        for j in red.js:
            o, m = off[j], red.dims[j]
            C[o : o + m, o : o + m] = conv(red.C0[j])
        if lam:
            for j, blk in red.CW.items():
                o1, o2 = off[j], off[j + 1]
                m1, m2 = blk.shape
                cw = conv(blk) * lam_c
                C[o1 : o1 + m1, o2 : o2 + m2] = cw
                C[o2 : o2 + m2, o1 : o1 + m1] = cw.T
    return C


def back_transform(red: SectorReduction, Y: np.ndarray) -> np.ndarray:
    """Basis coefficients ``c = X y`` (S-orthonormal if Y is orthonormal)."""
    off = red.offsets()
    n_basis = red.mats.size
    obj = Y.dtype == object
    with mpmath.workdps(red.digits):
        c = np.empty((n_basis, Y.shape[1]), dtype=object if obj else float)
        c[:, :] = mpmath.mpf(0) if obj else 0.0
        for j in red.js:
            b = red.blocks[j]
            o, m = off[j], red.dims[j]
            Xj = red.X[j] if obj else as_float_array(red.X[j])
            c[b, :] = Xj @ Y[o : o + m, :]
        if red.mats.pi_factored:
            c = c / (mpmath.sqrt(mpmath.pi) if obj else math.sqrt(math.pi))
    return c


def _policy_digits(policy: ScalarPolicy) -> int:
    if policy.kind is PolicyKind.EXACT:
        raise PolicyError("eigenvalues are not rational; solve with a decimal or double policy")
    if policy.kind is PolicyKind.DOUBLE:
        return 20
    return policy.digits + GUARD_DIGITS


def block_spectrum(red: SectorReduction, j: int, policy: ScalarPolicy):
    """Ascending field-free eigenpairs of angular block ``j`` (reduced basis)."""
    key = ("block", j, policy)
    cache = red.mats.extra
    if key in cache:
        return cache[key]
    C = red.C0[j]
    if policy.kind is PolicyKind.DOUBLE:
        w, Y = sym_eigh(as_float_array(C))
    else:
        with mpmath.workdps(red.digits):
            w, Y = sym_eigh(C)
    cache[key] = (w, Y)
    return w, Y


def sector_labels(red: SectorReduction, policy: ScalarPolicy) -> list[LevelLabel]:
    """Labels of the sector's levels in ascending field-free order.

    At ``lam != 0`` the k-th eigenvalue of the sector keeps the k-th label.
    """
    parity = red.mats.spec.parity
    entries = []
    for j in red.js:
        w, _ = block_spectrum(red, j, policy)
        entries += [(w[n], LevelLabel(n, j, parity)) for n in range(len(w))]
    entries.sort(key=lambda e: e[0])
    return [lab for _, lab in entries]


@dataclass(frozen=True, eq=False)
class Spectrum:
    params: ModelParams
    spec: BasisSpec
    values: list
    vectors: np.ndarray
    policy: ScalarPolicy
    condition_estimate: float
    labels: list[LevelLabel] = field(default_factory=list)
    reduced_dim: int = 0

    def floats(self) -> list[float]:
        return [float(v) for v in self.values]


def solve_generalized(mats: MatrixSet, lam=0, policy: ScalarPolicy | None = None, count: int | None = None) -> Spectrum:
    """Lowest ``count`` eigenpairs of ``(T + Q + lam W) c = E S c``."""
    policy = policy or ScalarPolicy.double()
    digits = _policy_digits(policy)
    count = mats.size if count is None else count
    if count < 0 or count > mats.size:
        raise InvalidInput(f"count={count} outside 0..{mats.size}")
    red = reduce_sector(mats, digits)
    if red.dim < count:
        raise RankError(f"reduced basis has {red.dim} functions, {count} requested")
    lam = as_rational(lam)
    as_float = policy.kind is PolicyKind.DOUBLE
    if lam == 0:
        values, Y = _field_free(red, policy)
    else:
        C = reduced_matrix(red, lam, as_float=as_float)
        with mpmath.workdps(red.digits):
            values, Y = sym_eigh(C)
    values = list(values[:count])
    Y = Y[:, :count]
    vectors = back_transform(red, Y)
    if policy.kind is PolicyKind.DECIMAL:
        with mpmath.workdps(policy.digits):
            values = [+v for v in values]
    else:
        values = [float(v) for v in values]
    return Spectrum(
        params=ModelParams(mats.r0, lam),
        spec=mats.spec,
        values=values,
        vectors=vectors,
        policy=policy,
        condition_estimate=red.condition_estimate,
        labels=sector_labels(red, policy)[:count],
        reduced_dim=red.dim,
    )


def _field_free(red: SectorReduction, policy: ScalarPolicy):
    off = red.offsets()
    n = red.dim
    obj = policy.kind is not PolicyKind.DOUBLE
    entries = []
    for j in red.js:
        w, Y = block_spectrum(red, j, policy)
        entries += [(w[k], j, k) for k in range(len(w))]
    entries.sort(key=lambda e: e[0])
    with mpmath.workdps(red.digits):
        Yfull = np.empty((n, n), dtype=object if obj else float)
        Yfull[:, :] = mpmath.mpf(0) if obj else 0.0
        for col, (_, j, k) in enumerate(entries):
            _, Y = block_spectrum(red, j, policy)
            o, m = off[j], red.dims[j]
            Yfull[o : o + m, col] = Y[:, k]
    return [e[0] for e in entries], Yfull


@lru_cache(maxsize=64)
def cached_assembly(spec: BasisSpec, r0, policy: ScalarPolicy) -> MatrixSet:
    return assemble(spec, r0, policy)


@dataclass(frozen=True)
class Level:
    value: object
    parity: Parity
    index: int
    label: LevelLabel


@dataclass(frozen=True, eq=False)
class MergedSpectrum:
    params: ModelParams
    kind: BasisKind
    N: int
    levels: list[Level]
    sectors: dict

    @property
    def values(self) -> list:
        return [lv.value for lv in self.levels]

    def floats(self) -> list[float]:
        return [float(lv.value) for lv in self.levels]


def sector_spectrum(params: ModelParams, kind, N: int, parity, policy: ScalarPolicy | None = None,
                    count: int | None = None, assembly_policy: ScalarPolicy | None = None) -> Spectrum:
    kind = BasisKind.parse(kind)
    spec = BasisSpec(kind, Parity.parse(parity), N)
    mats = cached_assembly(spec, params.r0, assembly_policy or default_policy(kind))
    if count is not None:
        count = min(count, mats.size)
    return solve_generalized(mats, params.lam, policy, count)


def merge_sectors(params: ModelParams, kind: BasisKind, N: int, sectors: dict, count: int, eps: float) -> MergedSpectrum:
    """Merge per-parity spectra by value; near-ties list the even level first."""
    levels = []
    for parity, sp in sectors.items():
        levels += [Level(v, parity, k, sp.labels[k]) for k, v in enumerate(sp.values)]
    levels.sort(key=lambda lv: lv.value)
    tol = 1e3 * eps
    for k in range(len(levels) - 1):
        a, b = levels[k], levels[k + 1]
        if a.parity is Parity.ODD and b.parity is Parity.EVEN and abs(b.value - a.value) <= tol * max(1, abs(a.value)):
            levels[k], levels[k + 1] = b, a
    return MergedSpectrum(params, kind, N, levels[:count], sectors)


def spectrum(params: ModelParams, kind="poly", N: int = 10, policy: ScalarPolicy | None = None,
             count: int = DEFAULT_COUNT, assembly_policy: ScalarPolicy | None = None) -> MergedSpectrum:
    """Lowest ``count`` levels over both parity sectors."""
    policy = policy or ScalarPolicy.double()
    kind = BasisKind.parse(kind)
    sectors = {}
    for parity in (Parity.EVEN, Parity.ODD):
        if parity is Parity.ODD and N < 1:
            continue
        sectors[parity] = sector_spectrum(params, kind, N, parity, policy, count, assembly_policy)
    return merge_sectors(params, kind, N, sectors, count, policy.eps)


@dataclass(frozen=True)
class ConvergenceTable:
    params: ModelParams
    kind: BasisKind
    parity: str
    rows: list  # (N, [values])
    agreement: list  # (N, [digits agreeing with the largest N])


def convergence_study(params: ModelParams, kind="poly", N_range=range(2, 11), policy: ScalarPolicy | None = None,
                      count: int = 4, parity="even", assembly_policy: ScalarPolicy | None = None) -> ConvergenceTable:
    """Eigenvalues row by row in N, plus digit agreement with the last row."""
    Ns = list(N_range)
    if Ns != sorted(Ns):
        raise InvalidInput("N range must be ascending")
    rows = []
    for N in Ns:
        if parity == "both":
            vals = spectrum(params, kind, N, policy, count, assembly_policy).values
        else:
            vals = sector_spectrum(params, kind, N, parity, policy, count, assembly_policy).values
        rows.append((N, list(vals)))
    ref = rows[-1][1]
    agreement = []
    if len(rows) > 1:
        for N, vals in rows:
            digs = []
            for v, r in zip(vals, ref):
                d = abs(float(v) - float(r)) / max(abs(float(r)), 1e-300)
                digs.append(math.inf if d == 0 else -math.log10(d))
            agreement.append((N, digs))
    return ConvergenceTable(params, BasisKind.parse(kind), str(parity), rows, agreement)


def residual_norms(mats: MatrixSet, sp: Spectrum, digits: int | None = None) -> list:
    """``||H v - E S v|| / ||S v||`` for every returned pair (max norm)."""
    digits = digits or max(sp.policy.digits, 20) + GUARD_DIGITS
    with mpmath.workdps(digits):
        pi = mpmath.pi if mats.pi_factored else 1
        S = as_mpf_array(mats.S) * pi
        H = as_mpf_array(mats.hamiltonian(sp.params.lam)) * pi
        V = as_mpf_array(sp.vectors)
        out = []
        for k, E in enumerate(sp.values):
            v = V[:, k]
            Sv = S @ v
            r = H @ v - Sv * mpmath.mpf(E)
            out.append(max(abs(x) for x in r) / max(abs(x) for x in Sv))
    return out
