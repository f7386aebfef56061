"""Eisenstein series toolkit: exact Dirichlet character arithmetic, K-Bessel
numerics, Dirichlet L-functions, newform Eisenstein series over Q with their
scattering constants and Whittaker expansions, amplified prime sums, and
sup-norm scaling scans."""

from eisenkit.characters import (
    DirichletCharacter,
    LocalEpsilonData,
    build_character,
    character_group,
    character_index,
    conductor,
    gauss_sum,
    gauss_sum_moduli_squared,
    local_epsilon,
    multiply,
    primitive_part,
)
from eisenkit.special_functions import (
    BesselRequest,
    BumpWeight,
    NumericEnvelopeError,
    NumericsError,
    PoleError,
    bessel_k,
    gamma_factor,
    whittaker_tail_cutoff,
)
from eisenkit.lfunctions import (
    LineZeroError,
    LValueRequest,
    completed_lambda,
    dirichlet_l,
    lambda_ratio,
)
from eisenkit.eisenstein import (
    CoefficientTable,
    ConstantTermData,
    EisensteinParams,
    build_coefficient_table,
    coefficient_prefactor,
    evaluate,
    evaluate_truncated,
    fourier_coefficient,
    functional_equation_residual,
    generalized_divisor_sum,
    local_constant,
    scattering_constant,
)
from eisenkit.amplifier import (
    AmplifierConfig,
    AsymptoticRow,
    amplifier_sum,
    asymptotic_report,
    b_xi,
    eta,
    factorization_check,
)
from eisenkit.supnorm import (
    ScanAbortedError,
    ScanReport,
    exponent_fit,
    geometric_grid,
    load_report,
    scan,
    theorem_reference,
)

__version__ = "0.1.0"

__all__ = [
    "AmplifierConfig",
    "AsymptoticRow",
    "BesselRequest",
    "BumpWeight",
    "CoefficientTable",
    "ConstantTermData",
    "DirichletCharacter",
    "EisensteinParams",
    "LValueRequest",
    "LineZeroError",
    "LocalEpsilonData",
    "NumericEnvelopeError",
    "NumericsError",
    "PoleError",
    "ScanAbortedError",
    "ScanReport",
    "amplifier_sum",
    "asymptotic_report",
    "b_xi",
    "bessel_k",
    "build_character",
    "build_coefficient_table",
    "character_group",
    "character_index",
    "coefficient_prefactor",
    "completed_lambda",
    "conductor",
    "dirichlet_l",
    "eta",
    "evaluate",
    "evaluate_truncated",
    "exponent_fit",
    "factorization_check",
    "fourier_coefficient",
    "functional_equation_residual",
    "gamma_factor",
    "gauss_sum",
    "gauss_sum_moduli_squared",
    "generalized_divisor_sum",
    "geometric_grid",
    "lambda_ratio",
    "load_report",
    "local_constant",
    "local_epsilon",
    "multiply",
    "primitive_part",
    "scan",
    "scattering_constant",
    "theorem_reference",
    "whittaker_tail_cutoff",
]
