"""Binomial tails, percent points and normal quantiles.

Tails are summed exactly with ``fractions.Fraction`` (the float ``p`` is taken
at its exact binary value) for m up to EXACT_BINOMIAL_LIMIT, so acceptance
decisions never depend on rounding; larger m fall back to scipy.
"""

import math
from fractions import Fraction
from functools import lru_cache

from scipy.stats import binom, norm

from src.exceptions import ValidationError

EXACT_BINOMIAL_LIMIT = 1024


def _check_probability(p: float, name: str = "p") -> None:
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"{name} must lie in [0, 1]", details={name: p})


def _check_open_unit(q: float, name: str) -> None:
    if not 0.0 < q < 1.0:
        raise ValidationError(f"{name} must lie in (0, 1)", details={name: q})


@lru_cache(maxsize=256)
def _exact_pmf(m: int, p: float) -> tuple[Fraction, ...]:
    exact_p = Fraction(p)
    q = 1 - exact_p
    return tuple(math.comb(m, k) * exact_p**k * q ** (m - k) for k in range(m + 1))


@lru_cache(maxsize=256)
def _exact_upper_tails(m: int, p: float) -> tuple[Fraction, ...]:
    """P(X >= x) for x = 0..m+1."""
    tails = [Fraction(0)] * (m + 2)
    pmf = _exact_pmf(m, p)
    for x in range(m, -1, -1):
        tails[x] = tails[x + 1] + pmf[x]
    return tuple(tails)


def binom_tail_upper(m: int, p: float, x: int) -> float:
    """P(X >= x) for X ~ Binomial(m, p)."""
    _check_probability(p)
    if m < 0 or not 0 <= x <= m + 1:
        raise ValidationError("Tail index out of range", details={"m": m, "x": x})
    if m <= EXACT_BINOMIAL_LIMIT:
        return float(_exact_upper_tails(m, p)[x])
    return float(binom.sf(x - 1, m, p))


def binom_tail_lower(m: int, p: float, x: int) -> float:
    """P(X <= x) for X ~ Binomial(m, p), with x in -1..m."""
    _check_probability(p)
    if m < 0 or not -1 <= x <= m:
        raise ValidationError("Tail index out of range", details={"m": m, "x": x})
    if m <= EXACT_BINOMIAL_LIMIT:
        return float(1 - _exact_upper_tails(m, p)[x + 1])
    return float(binom.cdf(x, m, p))


def percent_point_upper(m: int, p: float, alpha: float) -> int:
    """x+(p) = min{x | P(X >= x) <= alpha}; m + 1 when even x = m fails."""
    _check_probability(p)
    _check_open_unit(alpha, "alpha")
    if m <= EXACT_BINOMIAL_LIMIT:
        tails = _exact_upper_tails(m, p)
        bound = Fraction(alpha)
        return next(x for x in range(m + 2) if tails[x] <= bound)
    return next(x for x in range(m + 2) if x == m + 1 or binom.sf(x - 1, m, p) <= alpha)


def percent_point_lower(m: int, p: float, alpha: float) -> int:
    """x-(p) = max{x | P(X <= x) <= alpha}; -1 when even x = 0 fails."""
    _check_probability(p)
    _check_open_unit(alpha, "alpha")
    if m <= EXACT_BINOMIAL_LIMIT:
        tails = _exact_upper_tails(m, p)
        bound = Fraction(alpha)
        candidates = [x for x in range(m + 1) if 1 - tails[x + 1] <= bound]
    else:
        candidates = [x for x in range(m + 1) if binom.cdf(x, m, p) <= alpha]
    return max(candidates, default=-1)


def norm_cdf(x: float) -> float:
    return float(norm.cdf(x))


def inv_norm_cdf(q: float) -> float:
    """Standard normal quantile Phi^{-1}(q).

    Raises:
        ValidationError: If q is not in (0, 1)
    """
    _check_open_unit(q, "q")
    return float(norm.ppf(q))


def tail_quantile(beta: float) -> float:
    """z with P(N(0,1) > z) = beta, the quantile the acceptance regions are written in."""
    _check_open_unit(beta, "beta")
    return float(norm.isf(beta))
