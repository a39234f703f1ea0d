"""Exact Dirichlet L-functions over F_q(T) and their zero statistics.

The family of nontrivial characters mod a monic irreducible Q gives
L-functions that are polynomials with exactly known coefficients; their
unitarized inverse roots are the eigenangles studied here.  The package
computes those angles, verifies the explicit formula and the Newton
trace identities numerically, aggregates 1- and 2-level family
statistics against their exact finite-field means and asymptotic main
terms, compares trace moments with Haar closed forms, and evaluates the
deviation exponents behind Montgomery-type progression conjectures.
"""

from .algebra import (
    count_irreducibles,
    field_make,
    irreducibles,
    is_irreducible,
    least_irreducible,
    poly_from_str,
    poly_to_str,
    von_mangoldt,
)
from .backend import BACKEND, warmup
from .characters import (
    Character,
    Modulus,
    UnitGroupTable,
    character_make,
    conjugate,
    family,
    modulus_make,
    modulus_search,
)
from .errors import CacheCorruptionError, ConfigError, NumericInvariantError
from .lfunction import (
    FamilyData,
    LData,
    c_coefficient,
    complete,
    dirichlet_coefficients,
    eigenangles,
    family_c_matrix,
    functional_equation_residual,
    make_ldata,
    newton_check,
    root_number,
    trace,
)
from .montgomery import (
    MontgomeryReport,
    MontgomeryRow,
    deviation_and_theta,
    pair_sums,
    psi_progression,
    psi_total,
    zero_sum,
    zero_sum_scale,
)
from .statistics import (
    FamilyReport,
    TestFunction1D,
    TestFunction2D,
    cauchy_family,
    centered_moment,
    discrepancy,
    ds_abs2,
    ds_moment,
    ds_pair,
    exact_family_abs2_mean,
    exact_family_trace_mean,
    explicit_rhs,
    f1,
    f2,
    f2_direct,
    family_explicit_check,
    family_explicit_residuals,
    family_f1_report,
    family_f1_variance,
    family_f2_report,
    geometric_family,
    haar_sample,
    haar_trace_moments,
    localize,
    localize2,
    rmt_variance_limit,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CacheCorruptionError",
    "Character",
    "ConfigError",
    "FamilyData",
    "FamilyReport",
    "LData",
    "Modulus",
    "MontgomeryReport",
    "MontgomeryRow",
    "NumericInvariantError",
    "TestFunction1D",
    "TestFunction2D",
    "UnitGroupTable",
    "c_coefficient",
    "cauchy_family",
    "centered_moment",
    "character_make",
    "complete",
    "conjugate",
    "count_irreducibles",
    "deviation_and_theta",
    "dirichlet_coefficients",
    "discrepancy",
    "ds_abs2",
    "ds_moment",
    "ds_pair",
    "eigenangles",
    "exact_family_abs2_mean",
    "exact_family_trace_mean",
    "explicit_rhs",
    "f1",
    "f2",
    "f2_direct",
    "family",
    "family_c_matrix",
    "family_explicit_check",
    "family_explicit_residuals",
    "family_f1_report",
    "family_f1_variance",
    "family_f2_report",
    "field_make",
    "functional_equation_residual",
    "geometric_family",
    "haar_sample",
    "haar_trace_moments",
    "irreducibles",
    "is_irreducible",
    "least_irreducible",
    "localize",
    "localize2",
    "make_ldata",
    "modulus_make",
    "modulus_search",
    "newton_check",
    "pair_sums",
    "poly_from_str",
    "poly_to_str",
    "psi_progression",
    "psi_total",
    "rmt_variance_limit",
    "root_number",
    "trace",
    "von_mangoldt",
    "warmup",
    "zero_sum",
    "zero_sum_scale",
]
