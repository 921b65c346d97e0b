"""Sampling without replacement: hypergeometric law and the soundness constants.

n copies are prepared, m of them are tested; K of the n are "successes" and X
counts the successes among the tested m, so X | K=k ~ HG(n, m, k).
"""

import math
from fractions import Fraction

import numpy as np
from pydantic import BaseModel
from scipy.stats import hypergeom

from src.exceptions import ValidationError
from src.stats.binomial import tail_quantile

EXACT_HYPERGEOM_LIMIT = 64


def _comb(a: int, b: int) -> int:
    return math.comb(a, b) if 0 <= b <= a else 0


def _check_hypergeom(n: int, m: int, k: int) -> None:
    if n < 0 or not 0 <= m <= n or not 0 <= k <= n:
        raise ValidationError("Invalid hypergeometric parameters", details={"n": n, "m": m, "k": k})


def hypergeom_pmf_exact(n: int, m: int, k: int, x: int) -> Fraction:
    """C(m, x) C(n-m, k-x) / C(n, k) as an exact rational."""
    _check_hypergeom(n, m, k)
    return Fraction(_comb(m, x) * _comb(n - m, k - x), math.comb(n, k))


def hypergeom_pmf(n: int, m: int, k: int, x: int) -> float:
    """Hypergeometric probability; exact rationals up to n = 64, scipy above."""
    _check_hypergeom(n, m, k)
    if n <= EXACT_HYPERGEOM_LIMIT:
        return float(hypergeom_pmf_exact(n, m, k, x))
    return float(hypergeom.pmf(x, n, m, k))


def hypergeom_mean(n: int, m: int, k: int) -> float:
    _check_hypergeom(n, m, k)
    return k * m / n if n else 0.0


def hypergeom_variance(n: int, m: int, k: int) -> float:
    """(n-m) m (n-k) k / ((n-1) n^2); never more than m / 4."""
    _check_hypergeom(n, m, k)
    if n < 2:
        raise ValidationError("Variance formula needs n >= 2", details={"n": n})
    return float(Fraction((n - m) * m * (n - k) * k, (n - 1) * n * n))


def soundness_constant(n: int, m: int, p_star: float, alpha: float, beta: float) -> float:
    """c(alpha, beta) = |1/2 + n/(n-m) z_beta sqrt(p*(1-p*))| / sqrt(alpha).

    Raises:
        ValidationError: Unless n > m >= 1
    """
    if not n > m >= 1:
        raise ValidationError("Soundness constant needs n > m >= 1", details={"n": n, "m": m})
    if not 0.0 < alpha < 1.0:
        raise ValidationError("alpha must lie in (0, 1)", details={"alpha": alpha})
    spread = tail_quantile(beta) * math.sqrt(p_star * (1.0 - p_star))
    return abs(0.5 + n / (n - m) * spread) / math.sqrt(alpha)


def deviation_moment_bound(n: int, m: int, c1: float) -> float:
    """(1/2 + n/(n-m) c1)^2 / m."""
    return (0.5 + n / (n - m) * c1) ** 2 / m


def deviation_second_moment(n: int, m: int, k: int, p_star: float, c1: float) -> float:
    """E[1{|p* - X/m| <= c1/sqrt(m)} (p* - (k - X)/(n - m))^2] for X ~ HG(n, m, k).

    This is the conditional squared deviation of the untested copies' success
    rate from p*, restricted to runs that pass the test; it is bounded by
    ``deviation_moment_bound`` for every k.
    """
    _check_hypergeom(n, m, k)
    if not n > m >= 1:
        raise ValidationError("Deviation moment needs n > m >= 1", details={"n": n, "m": m})
    xs = np.arange(0, m + 1)
    pmf = hypergeom.pmf(xs, n, m, k)
    accepted = np.abs(p_star - xs / m) <= c1 / math.sqrt(m)
    deviation = (p_star - (k - xs) / (n - m)) ** 2
    return float(np.sum(pmf * deviation * accepted))


class ZeroTestMixture(BaseModel):
    """Adversarial K in {0, 1} mixture for T(m, 0) with n = m + 1."""

    m: int
    weight: float
    pass_probability: float
    conditional_success: float
    bound: float


def zero_test_conditional(m: int, weight: Fraction) -> tuple[Fraction, Fraction]:
    """Exact pass probability and post-pass success probability of X' for weight Q_K(1)."""
    pass_probability = 1 - weight + weight / (1 + m)
    return pass_probability, (weight / (1 + m)) / pass_probability


def zero_test_worst_case(m: int, alpha: float) -> ZeroTestMixture:
    """Largest K=1 weight keeping the pass probability at alpha, and what it buys the adversary."""
    if m < 1 or not 0.0 < alpha < 1.0:
        raise ValidationError("Invalid zero-test parameters", details={"m": m, "alpha": alpha})
    exact_alpha = Fraction(alpha)
    weight = min(Fraction(1), (1 + m) * (1 - exact_alpha) / m)
    pass_probability, conditional = zero_test_conditional(m, weight)
    return ZeroTestMixture(
        m=m,
        weight=float(weight),
        pass_probability=float(pass_probability),
        conditional_success=float(conditional),
        bound=float((1 - exact_alpha) / (m * exact_alpha)),
    )
