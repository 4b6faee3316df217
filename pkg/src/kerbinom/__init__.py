"""Kernels of F_q-linear binomials, scattered linear sets and rank-metric codes."""

__version__ = "0.1.0"

from .gf import FieldCtx, FieldElement, FieldError, make_field, tower_field
from .linpoly import QPolynomial, is_scattered, kernel_dimension, weight_spectrum
from .binomial import (
    BinomialParams,
    ConditionSystem,
    WitnessCertificate,
    classify,
    delta_from_xi,
    find_witness,
    lp_criterion_n3,
    transport_witness,
    witness_from_xi,
)
from .curves import CurveCount, CurveSpec, count_even, count_odd, params_from_curve_point, split_check_even
from .rmcode import RankCode, is_mrd, min_distance, rank_code, rank_distribution

__all__ = [
    "FieldCtx",
    "FieldElement",
    "FieldError",
    "make_field",
    "tower_field",
    "QPolynomial",
    "is_scattered",
    "kernel_dimension",
    "weight_spectrum",
    "BinomialParams",
    "ConditionSystem",
    "WitnessCertificate",
    "classify",
    "delta_from_xi",
    "find_witness",
    "lp_criterion_n3",
    "transport_witness",
    "witness_from_xi",
    "CurveCount",
    "CurveSpec",
    "count_even",
    "count_odd",
    "params_from_curve_point",
    "split_check_even",
    "RankCode",
    "is_mrd",
    "min_distance",
    "rank_code",
    "rank_distribution",
]
