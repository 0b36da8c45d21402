"""Energy levels of a two-dimensional harmonic oscillator with a linear field
term inside an impenetrable circular box.

Rayleigh-Ritz spectra in polynomial and Gaussian-weighted bases, perturbation
series in the field strength, and the small- and large-box limits.
"""

__version__ = "0.1.0"

from .assembly import MatrixSet, assemble, load_json, dump_json
from .basis import BasisIndex, BasisKind, BasisSpec, EmptyBasis, enumerate_basis, evaluate
from .eigensolver import (
    DegeneracyError,
    MergedSpectrum,
    Spectrum,
    convergence_study,
    sector_spectrum,
    solve_generalized,
    spectrum,
)
from .linalg import NotPositiveDefinite, RankError
from .model import (
    InvalidInput,
    LevelLabel,
    ModelParams,
    Parity,
    PhysicalInputs,
    large_box_energy,
    nondimensionalize,
)
from .perturbation import PtExpansion, pt2_sum_over_states, pt_eval, pt_limit_table, rs_expansion
from .policy import PolicyError, ScalarPolicy
from .reference import bessel_j, bessel_zero, large_box_check, pib_energy, small_box_check
from .special import AccuracyWarning

__all__ = [name for name in dir() if not name.startswith("_")]
