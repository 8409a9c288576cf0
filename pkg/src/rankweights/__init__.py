"""Relative generalized matrix weights for universally secure linear network coding."""

__version__ = "0.1.0"

from .errors import ConsistencyError, FieldMismatchError, GuardExceeded, RankWeightsError, TheoremViolation
from .field import ExtField, Field, parse_field
from .linalg import Subspace, enumerate_subspaces, gaussian_binomial
from .rank import MatrixCode, rank_support, rank_support_space, rank_weight
from .schemes import CosetScheme, NestedPair, build_scheme, leakage_exact, optimal_scheme, scheme_parameters
from .weights import WeightProfile, rdrp, rgmw, weight_profile

__all__ = [
    "ConsistencyError",
    "CosetScheme",
    "ExtField",
    "Field",
    "FieldMismatchError",
    "GuardExceeded",
    "MatrixCode",
    "NestedPair",
    "RankWeightsError",
    "Subspace",
    "TheoremViolation",
    "WeightProfile",
    "build_scheme",
    "enumerate_subspaces",
    "gaussian_binomial",
    "leakage_exact",
    "optimal_scheme",
    "parse_field",
    "rank_support",
    "rank_support_space",
    "rank_weight",
    "rdrp",
    "rgmw",
    "scheme_parameters",
    "weight_profile",
]
