"""Exact statistics for the acceptance tests and their soundness statements."""

from src.stats.acceptance import (
    IntervalConclusion,
    TestKind,
    TestSpec,
    run_test_T,
    run_test_zero,
    threshold_table,
    zero_test_bound,
)
from src.stats.binomial import (
    binom_tail_lower,
    binom_tail_upper,
    inv_norm_cdf,
    norm_cdf,
    percent_point_lower,
    percent_point_upper,
    tail_quantile,
)
from src.stats.hypergeometric import (
    ZeroTestMixture,
    deviation_moment_bound,
    deviation_second_moment,
    hypergeom_mean,
    hypergeom_pmf,
    hypergeom_pmf_exact,
    hypergeom_variance,
    soundness_constant,
    zero_test_conditional,
    zero_test_worst_case,
)

__all__ = [
    "TestKind",
    "TestSpec",
    "IntervalConclusion",
    "run_test_T",
    "run_test_zero",
    "zero_test_bound",
    "threshold_table",
    "binom_tail_upper",
    "binom_tail_lower",
    "percent_point_upper",
    "percent_point_lower",
    "inv_norm_cdf",
    "norm_cdf",
    "tail_quantile",
    "hypergeom_pmf",
    "hypergeom_pmf_exact",
    "hypergeom_mean",
    "hypergeom_variance",
    "soundness_constant",
    "deviation_moment_bound",
    "deviation_second_moment",
    "ZeroTestMixture",
    "zero_test_conditional",
    "zero_test_worst_case",
]
