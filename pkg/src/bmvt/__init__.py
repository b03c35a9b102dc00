"""Arithmetic-function tables, Dirichlet character sums, and explicit
mean-value bound verification at desk scale."""

from .funtable import (
    EXACT_INT,
    EXACT_RATIONAL,
    REAL,
    FunTable,
    PartialSumProfile,
    build_standard,
    conv_inverse,
    convolve,
    load_table,
    restrict,
    weighted_partial_sums,
)
from .characters import (
    CharacterTable,
    CharSumResult,
    char_sum_max,
    conductor,
    enumerate_characters,
    polya_vinogradov_ratio,
)
from .weights import (
    GrahamWeight,
    WeightEta,
    graham_weight,
    h4_ratio,
    h4prime_bilinear,
    h4prime_implies_h4_check,
    make_eta,
)
from .vaughan import (
    Decomposition,
    DyadicCover,
    VaughanParams,
    blockwise_max_sums,
    dyadic_cover,
    weighted_decomposition,
)
from .meanvalue import (
    BoundReport,
    ExponentFit,
    ExponentProfile,
    bound_H,
    classic_profile,
    component_sums,
    corollary_ML,
    fit_exponent,
    lambda_k_profile,
    large_q_branch,
    exponent_shape_check,
    lhs,
    sedunova_params,
    trivial_bounds,
)

__version__ = "0.1.0"
