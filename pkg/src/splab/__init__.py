"""Spectral-domain laboratory for triangular summation in the spaces S^p."""

__version__ = "0.1.0"

from .calculus import PoissonParams, PsiWeight, PsiZeroError, psi_derivative
from .config import Budget, Grids, Thresholds
from .experiments import (
    PreconditionError,
    RateReport,
    TheoremOutcome,
    big_O_ratio_test,
    equivalence7_experiment,
    proposition1_experiment,
    theorem1_experiment,
    theorem2_experiment,
)
from .families import CATALOG, FamilySpec
from .moduli import Modulus, check_basic_conditions, check_condition_B, estimate_class_membership
from .spectrum import BlockProfile, ResourceError, Spectrum, TailMismatchError, profile_of, shift_difference_norm, sp_norm
from .summation import SummationMethod, approximation_error, lambda_coeff, multipliers
from .tails import Interval, TailMajorant

__all__ = [
    "BlockProfile",
    "Budget",
    "CATALOG",
    "FamilySpec",
    "Grids",
    "Interval",
    "Modulus",
    "PoissonParams",
    "PreconditionError",
    "PsiWeight",
    "PsiZeroError",
    "RateReport",
    "ResourceError",
    "Spectrum",
    "SummationMethod",
    "TailMajorant",
    "TailMismatchError",
    "TheoremOutcome",
    "Thresholds",
    "approximation_error",
    "big_O_ratio_test",
    "check_basic_conditions",
    "check_condition_B",
    "equivalence7_experiment",
    "estimate_class_membership",
    "lambda_coeff",
    "multipliers",
    "profile_of",
    "proposition1_experiment",
    "psi_derivative",
    "shift_difference_norm",
    "sp_norm",
    "theorem1_experiment",
    "theorem2_experiment",
]
