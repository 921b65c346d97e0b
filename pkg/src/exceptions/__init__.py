"""Custom exceptions package."""

from src.exceptions.base import (
    ConfigurationError,
    DimensionLimitError,
    InsufficientCopiesError,
    NumericalError,
    PartyViolationError,
    ProtocolError,
    SelfTestError,
    ValidationError,
)

__all__ = [
    "SelfTestError",
    "ConfigurationError",
    "ValidationError",
    "DimensionLimitError",
    "ProtocolError",
    "InsufficientCopiesError",
    "PartyViolationError",
    "NumericalError",
]
