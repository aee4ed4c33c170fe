"""Exact Clebsch-Gordan coefficients from binomial state counting.

The package computes every coefficient for the coupling of two angular
momenta in closed form (sign times the square root of a reduced fraction),
using integer state-count matrices, and ships two independent oracles for
cross-validation: an exact factorial-sum formula and a high-precision
lowering-operator recursion.
"""

from .exactval import IncompatibleRadicals, SqrtRational, from_signed_ratio
from .halfint import (
    CouplingSpec,
    Projection,
    QuantumNumberError,
    TwoJ,
    allowed_total_j,
    parse_half_integer,
    parse_projection,
)
from .omega import (
    OmegaMatrix,
    SignMismatch,
    extract_cg,
    lambda_and_v,
    lambda_minus_v_pow,
    omega0,
    omega_n,
    stretched_cg,
    tilde_omega,
)
from .racah import (
    PrecisionExhausted,
    VerificationReport,
    lowering_recursion_table,
    racah_cg,
    verify_against_oracles,
)
from .tables import CGTable, build_table, parse_json, render

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "CGTable",
    "CouplingSpec",
    "IncompatibleRadicals",
    "OmegaMatrix",
    "PrecisionExhausted",
    "Projection",
    "QuantumNumberError",
    "SignMismatch",
    "SqrtRational",
    "TwoJ",
    "VerificationReport",
    "allowed_total_j",
    "build_table",
    "extract_cg",
    "from_signed_ratio",
    "lambda_and_v",
    "lambda_minus_v_pow",
    "lowering_recursion_table",
    "omega0",
    "omega_n",
    "parse_half_integer",
    "parse_json",
    "parse_projection",
    "racah_cg",
    "render",
    "stretched_cg",
    "tilde_omega",
    "verify_against_oracles",
]
