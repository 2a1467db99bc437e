"""Exact connection data and annihilating operators for one-parameter sparse polynomials.

The input is a polynomial in n+1 variables with n+2 monomials, the last one
weighted by a parameter lam.  The package computes, all in exact rational
arithmetic: the rank hypotheses and the minimal integer relation between the
exponents, the connection coefficients sigma and tau, the operator
lam * nabla on monomial classes, closed-form annihilating operators for two
parametrized exponent layouts with their monodromy candidate exponents, and
order-by-order propagation of log expansion coefficients.
"""

from .algebra import (
    ABElement,
    HomogeneousPart,
    ab_mul,
    as_homogeneous,
    conj_b,
    homogeneous_components,
    linear_factor_product,
    shift_identity_check,
)
from .asymptotics import (
    ExpansionSpec,
    ExpansionTable,
    LogPoly,
    integrate_log,
    propagate,
    verify_table,
)
from .connection import (
    MonomialMu,
    PDECoeffs,
    SigmaTau,
    nabla_formula,
    pde_coefficients,
    push_nabla,
    push_nabla_via_shift,
    sigma_tau,
)
from .errors import (
    ContractError,
    DimensionError,
    HypothesisError,
    InputError,
    SingularMatrixError,
)
from .exact import LaurentPoly, Rat, RatMatrix, det, format_rat, invert, parse_rat, rank, rat, solve
from .exponents import (
    Case,
    DependencyData,
    DetIdentityReport,
    ExponentData,
    HypothesisReport,
    dependency,
    dependency_solution,
    det_identity_check,
    validate_hypotheses,
)
from .families import (
    CrossValidationReport,
    FamilyResult,
    cross_validate,
    factored_display,
    family_a,
    family_b,
    match_family,
    monodromy_candidates,
)

__version__ = "0.1.0"

__all__ = [
    "ABElement",
    "Case",
    "ContractError",
    "CrossValidationReport",
    "DependencyData",
    "DetIdentityReport",
    "DimensionError",
    "ExpansionSpec",
    "ExpansionTable",
    "ExponentData",
    "FamilyResult",
    "HomogeneousPart",
    "HypothesisError",
    "HypothesisReport",
    "InputError",
    "LaurentPoly",
    "LogPoly",
    "MonomialMu",
    "PDECoeffs",
    "Rat",
    "RatMatrix",
    "SigmaTau",
    "SingularMatrixError",
    "ab_mul",
    "as_homogeneous",
    "conj_b",
    "cross_validate",
    "dependency",
    "dependency_solution",
    "det",
    "det_identity_check",
    "factored_display",
    "family_a",
    "family_b",
    "format_rat",
    "homogeneous_components",
    "integrate_log",
    "invert",
    "linear_factor_product",
    "match_family",
    "monodromy_candidates",
    "nabla_formula",
    "parse_rat",
    "pde_coefficients",
    "propagate",
    "push_nabla",
    "push_nabla_via_shift",
    "rank",
    "rat",
    "shift_identity_check",
    "sigma_tau",
    "solve",
    "validate_hypotheses",
    "verify_table",
]
