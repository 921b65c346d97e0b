"""Sizing of the Bell-test constant c1."""

import logging
import math

from scipy.optimize import brentq
from scipy.stats import norm

from src.exceptions import ValidationError

logger = logging.getLogger(__name__)


def honest_pass_probability(c1: float) -> float:
    """Normal-approximation probability that the ideal pair passes all three statistical checks.

    The two one-sided sums have honest variance 1/m and the two-sided one 2/m,
    so the joint pass probability is Phi(c1)^2 (2 Phi(c1/sqrt 2) - 1).
    """
    return float(norm.cdf(c1) ** 2 * (2.0 * norm.cdf(c1 / math.sqrt(2.0)) - 1.0))


def calibrate_c1(beta_accept: float, num_tests: int = 4, sites_n: int = 1) -> float:
    """c1 that makes the ideal devices pass with probability about ``beta_accept``.

    With one site the joint pass probability is solved for exactly. With
    ``sites_n`` > 1 every test of every site is given the tail
    (1 - beta) / (num_tests * sites_n), sized for the widest (two-sided)
    check, which grows like sqrt(log n).

    Raises:
        ValidationError: If beta_accept is not in (0, 1) or the counts are not positive
    """
    if not 0.0 < beta_accept < 1.0:
        raise ValidationError("beta_accept must lie in (0, 1)", details={"beta": beta_accept})
    if num_tests < 1 or sites_n < 1:
        raise ValidationError(
            "Test and site counts must be positive",
            details={"num_tests": num_tests, "sites_n": sites_n},
        )
    if sites_n == 1:
        c1 = brentq(lambda c: honest_pass_probability(c) - beta_accept, 1e-9, 60.0, xtol=1e-14)
    else:
        tail = (1.0 - beta_accept) / (num_tests * sites_n)
        c1 = math.sqrt(2.0) * norm.isf(tail / 2.0)
    logger.debug("Calibrated c1=%.10g for beta=%.6g, n=%d", c1, beta_accept, sites_n)
    return float(c1)
