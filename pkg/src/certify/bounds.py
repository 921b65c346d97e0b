"""Closed-form certification bounds."""

from src.config import protocol_settings
from src.exceptions import ValidationError


def _check(n: int, delta: float, **others: float) -> None:
    if n < 1 or delta < 0 or any(v < 0 for v in others.values()):
        raise ValidationError("Bounds need n >= 1 and non-negative parameters",
                              details={"n": n, "delta": delta, **others})


def povm_bound(n: int, delta: float, s: int | None = None) -> float:
    """2 s n delta; s is the number of controlled observables per site (4 by default)."""
    s = protocol_settings().s if s is None else s
    _check(n, delta, s=s)
    return 2.0 * s * n * delta


def state_error_bound(n: int, delta: float, alpha: float, m: int) -> float:
    """6 n delta + 3 alpha / m."""
    _check(n, delta, alpha=alpha)
    if m < 1:
        raise ValidationError("m must be positive", details={"m": m})
    return 6.0 * n * delta + 3.0 * alpha / m


def incorrect_accept_bound(n: int, delta: float, alpha: float, m: int) -> float:
    """14 n delta + 3 alpha / m."""
    _check(n, delta, alpha=alpha)
    if m < 1:
        raise ValidationError("m must be positive", details={"m": m})
    return 14.0 * n * delta + 3.0 * alpha / m
