"""Acceptance tests T(m, p*, beta), T-(m, p*, beta) and T(m, 0).

``beta_tail`` is the tail parameter of the acceptance region: with
z = Phi^{-1}(1 - beta_tail) the two-sided region is m p* +- sqrt(m) z sigma,
so ideal i.i.d. data pass with probability about 1 - 2 beta_tail (1 - beta_tail
for the one-sided test). Reports carry both numbers.
"""

import logging
import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.exceptions import ValidationError
from src.stats.binomial import percent_point_lower, percent_point_upper, tail_quantile

logger = logging.getLogger(__name__)


class TestKind(str, Enum):
    """Which acceptance test a TestSpec describes."""

    __test__ = False

    TWO_SIDED = "two_sided"
    ONE_SIDED = "one_sided"
    ZERO = "zero"


class TestSpec(BaseModel):
    """Parameters of one acceptance test."""

    __test__ = False
    model_config = ConfigDict(frozen=True)

    m: int = Field(..., ge=1)
    p_star: float = Field(..., ge=0.0, le=1.0)
    alpha: float = Field(..., gt=0.0, lt=1.0)
    beta_tail: float = Field(..., gt=0.0, lt=1.0)
    kind: TestKind = TestKind.TWO_SIDED

    @model_validator(mode="after")
    def _zero_test_targets_zero(self) -> "TestSpec":
        if self.kind is TestKind.ZERO and self.p_star != 0.0:
            raise ValueError("the zero test has p_star = 0")
        return self

    @property
    def acceptance_probability(self) -> float:
        """Approximate pass probability of ideal i.i.d. data."""
        if self.kind is TestKind.TWO_SIDED:
            return 1.0 - 2.0 * self.beta_tail
        if self.kind is TestKind.ONE_SIDED:
            return 1.0 - self.beta_tail
        return 1.0

    @property
    def sigma(self) -> float:
        return math.sqrt(self.p_star * (1.0 - self.p_star))

    def region(self) -> tuple[float, float]:
        """Acceptance region for the success count X (upper is +inf for T-)."""
        if self.kind is TestKind.ZERO:
            return 0.0, 0.0
        half = math.sqrt(self.m) * tail_quantile(self.beta_tail) * self.sigma
        centre = self.m * self.p_star
        if self.kind is TestKind.ONE_SIDED:
            return centre - half, math.inf
        return centre - half, centre + half


class IntervalConclusion(BaseModel):
    """Interval the true success probability is asserted to lie in, at a significance level."""

    lower: float
    upper: float
    significance: float

    @model_validator(mode="after")
    def _ordered(self) -> "IntervalConclusion":
        if self.lower > self.upper:
            raise ValueError("lower must not exceed upper")
        return self


def _check_count(m: int, x_observed: int) -> None:
    if not 0 <= x_observed <= m:
        raise ValidationError("Observed count out of range", details={"m": m, "x": x_observed})


def run_test_T(spec: TestSpec, x_observed: int) -> tuple[bool, IntervalConclusion | None]:
    """Run the two-sided or one-sided test on an observed success count.

    On pass, returns the interval p* -+ (z_beta + z_alpha) sigma / sqrt(m) clipped to
    [0, 1]; the one-sided test only bounds p from below, so its upper end is 1.

    Raises:
        ValidationError: For p* in {0, 1}, the zero-test kind or an out-of-range count
    """
    if spec.kind is TestKind.ZERO:
        raise ValidationError("Use run_test_zero for the zero test")
    if spec.p_star in (0.0, 1.0):
        raise ValidationError(
            "Degenerate target probability; use the zero test", details={"p_star": spec.p_star}
        )
    _check_count(spec.m, x_observed)
    low, high = spec.region()
    passed = low <= x_observed <= high
    logger.debug(
        "T(m=%d, p*=%.6g, beta=%.6g, %s): x=%d region=[%.6g, %.6g] pass=%s",
        spec.m, spec.p_star, spec.beta_tail, spec.kind.value, x_observed, low, high, passed,
    )
    if not passed:
        return False, None
    width = (tail_quantile(spec.beta_tail) + tail_quantile(spec.alpha)) * spec.sigma
    width /= math.sqrt(spec.m)
    upper = 1.0 if spec.kind is TestKind.ONE_SIDED else min(1.0, spec.p_star + width)
    return True, IntervalConclusion(
        lower=max(0.0, spec.p_star - width), upper=upper, significance=spec.alpha
    )


def zero_test_bound(m: int, alpha: float) -> float:
    """(1 - alpha) / (m alpha)."""
    if m < 1 or not 0.0 < alpha < 1.0:
        raise ValidationError("Invalid zero-test parameters", details={"m": m, "alpha": alpha})
    return (1.0 - alpha) / (m * alpha)


def run_test_zero(m: int, x_observed: int, alpha: float) -> tuple[bool, float]:
    """T(m, 0): pass iff no success was observed; returns the success-probability bound."""
    _check_count(m, x_observed)
    return x_observed == 0, zero_test_bound(m, alpha)


def threshold_table(
    m_values: list[int], p_star: float, alpha: float, beta_tail: float
) -> list[dict[str, float | int]]:
    """Rows of acceptance regions, percent points and conclusion widths for CSV export."""
    rows: list[dict[str, float | int]] = []
    for m in m_values:
        spec = TestSpec(m=m, p_star=p_star, alpha=alpha, beta_tail=beta_tail)
        low, high = spec.region()
        half_width = (tail_quantile(beta_tail) + tail_quantile(alpha)) * spec.sigma / math.sqrt(m)
        rows.append(
            {
                "m": m,
                "p_star": p_star,
                "alpha": alpha,
                "beta_tail": beta_tail,
                "acceptance_probability": spec.acceptance_probability,
                "region_lower": low,
                "region_upper": high,
                "percent_point_upper": percent_point_upper(m, p_star, alpha),
                "percent_point_lower": percent_point_lower(m, p_star, alpha),
                "conclusion_half_width": half_width,
            }
        )
    return rows
