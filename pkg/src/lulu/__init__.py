"""Exact LULU smoothing for piecewise-linear functions and sampled sequences."""

from .plf import (
    DomainError,
    PLFunction,
    Window,
    compose_shift_clamp,
    pl_add,
    pl_max,
    pl_min,
    pl_sub,
    pointwise_leq,
    sup_norm,
    sup_norm_diff,
)
from .envelopes import dilate, erode
from .smoothers import (
    SemigroupElement,
    SmootherConfig,
    apply_word,
    compose,
    lower_smoother,
    reduce_word,
    upper_smoother,
)
from .monotonicity import (
    ModulusReport,
    ModulusWitness,
    analyze_modulus,
    is_downwards_monotone,
    is_locally_monotone,
    is_upwards_monotone,
    modified_modulus,
    modulus,
    modulus_hat,
    modulus_with_witness,
)
from .discrete import (
    BoundaryPolicy,
    Signal,
    apply_discrete_word,
    discrete_lower,
    discrete_upper,
    embed_as_step,
)
from .oracle import (
    GridOracle,
    OracleCostError,
    brute_discrete_lower,
    brute_discrete_upper,
)
from .randgen import case_rng, random_plfunction, random_signal
from .report import AnalysisReport, build_report
from .verify import run_verification

__all__ = [
    "AnalysisReport",
    "BoundaryPolicy",
    "DomainError",
    "GridOracle",
    "ModulusReport",
    "ModulusWitness",
    "OracleCostError",
    "PLFunction",
    "SemigroupElement",
    "Signal",
    "SmootherConfig",
    "Window",
    "analyze_modulus",
    "apply_discrete_word",
    "apply_word",
    "brute_discrete_lower",
    "brute_discrete_upper",
    "build_report",
    "case_rng",
    "compose",
    "compose_shift_clamp",
    "dilate",
    "discrete_lower",
    "discrete_upper",
    "embed_as_step",
    "erode",
    "is_downwards_monotone",
    "is_locally_monotone",
    "is_upwards_monotone",
    "lower_smoother",
    "modified_modulus",
    "modulus",
    "modulus_hat",
    "modulus_with_witness",
    "pl_add",
    "pl_max",
    "pl_min",
    "pl_sub",
    "pointwise_leq",
    "random_plfunction",
    "random_signal",
    "reduce_word",
    "run_verification",
    "sup_norm",
    "sup_norm_diff",
    "upper_smoother",
]

__version__ = "0.1.0"
