"""Empirical checks of distribution, clustering, attraction and inequalities."""

from speclab.analysis.clustering import (
    AttractionReport,
    ClusterReport,
    attraction_profile,
    classify_trend,
    cluster_count,
    cluster_profile,
    nearest_distances,
)
from speclab.analysis.distribution import (
    DistributionReport,
    distribution_compare,
    eigen_mean,
    equal_distribution_gap,
    family_matrix,
    ladder_spectra,
)
from speclab.analysis.functions import HatBump, Monomial, Polynomial, parse_test_function
from speclab.analysis.inequalities import (
    KyFanReport,
    OutlierReport,
    RecurrenceReport,
    characteristic_newton_step,
    imaginary_trace_norm,
    kyfan_mirsky_check,
    nonreal_outlier_bound,
    recurrence_residual,
)

__all__ = [
    "AttractionReport",
    "ClusterReport",
    "DistributionReport",
    "HatBump",
    "KyFanReport",
    "Monomial",
    "OutlierReport",
    "Polynomial",
    "RecurrenceReport",
    "attraction_profile",
    "characteristic_newton_step",
    "classify_trend",
    "cluster_count",
    "cluster_profile",
    "distribution_compare",
    "eigen_mean",
    "equal_distribution_gap",
    "family_matrix",
    "imaginary_trace_norm",
    "kyfan_mirsky_check",
    "ladder_spectra",
    "nearest_distances",
    "nonreal_outlier_bound",
    "parse_test_function",
    "recurrence_residual",
]
