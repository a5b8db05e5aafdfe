"""Numerical laboratory for mixed norm spaces H(p,q,alpha) on the unit disk."""

from .errors import (
    BranchMismatchError,
    DomainError,
    ToleranceNotReached,
    UnsupportedFamilyError,
)
from .functions import (
    AnalyticFunction,
    Kernel,
    Lacunary,
    LogPower,
    MemberStatus,
    Membership,
    Monomial,
    Power,
    Series,
    constant,
    function_from_json,
    known_membership,
    membership_margin,
    parse_function_spec,
)
from .means import (
    MeanProfile,
    integral_mean,
    log_integral_mean,
    log_means_on_gaps,
    mean_profile,
    mean_with_error,
    parseval_mean,
)
from .norms import (
    GrowthFit,
    NormResult,
    growth_exponent,
    growth_fit,
    mixed_norm,
    point_evaluation_bound,
    pointwise_constant,
)
from .batteries import inclusion_pair_grid, space_pool, standard_battery
from .checks import (
    CheckReport,
    beta_identity_grid,
    check_beta_identity,
    check_extremal_kernel,
    check_lemma_growth_transfer,
    check_lemma_mean_comparison,
    check_lemma_mean_upgrade,
    check_little_oh_mean,
    check_pointwise_bound,
    run_suite,
)
from .inclusion import (
    Branch,
    ConstantInfo,
    EmbeddingReport,
    InclusionVerdict,
    WitnessSoundness,
    decide_inclusion,
    embedding_constant,
    verify_embedding,
    witness,
    witness_soundness,
)
from .params import INF, ExtendedRational, SpaceParams, as_param, is_inf, reciprocal
from .specialfns import beta, log_beta, log_gamma

__version__ = "0.1.0"

__all__ = [
    "AnalyticFunction",
    "Branch",
    "BranchMismatchError",
    "CheckReport",
    "ConstantInfo",
    "DomainError",
    "EmbeddingReport",
    "ExtendedRational",
    "GrowthFit",
    "INF",
    "InclusionVerdict",
    "Kernel",
    "Lacunary",
    "LogPower",
    "MeanProfile",
    "MemberStatus",
    "Membership",
    "Monomial",
    "NormResult",
    "Power",
    "Series",
    "SpaceParams",
    "ToleranceNotReached",
    "UnsupportedFamilyError",
    "WitnessSoundness",
    "as_param",
    "beta",
    "beta_identity_grid",
    "check_beta_identity",
    "check_extremal_kernel",
    "check_lemma_growth_transfer",
    "check_lemma_mean_comparison",
    "check_lemma_mean_upgrade",
    "check_little_oh_mean",
    "check_pointwise_bound",
    "constant",
    "decide_inclusion",
    "embedding_constant",
    "function_from_json",
    "growth_exponent",
    "growth_fit",
    "inclusion_pair_grid",
    "integral_mean",
    "is_inf",
    "known_membership",
    "log_beta",
    "log_gamma",
    "log_integral_mean",
    "log_means_on_gaps",
    "mean_profile",
    "mean_with_error",
    "membership_margin",
    "mixed_norm",
    "parse_function_spec",
    "parseval_mean",
    "point_evaluation_bound",
    "pointwise_constant",
    "reciprocal",
    "run_suite",
    "space_pool",
    "standard_battery",
    "verify_embedding",
    "witness",
    "witness_soundness",
]
