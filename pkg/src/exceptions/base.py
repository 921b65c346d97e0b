"""Base exception classes for the self-testing simulator.

Provides a hierarchy of custom exceptions for invalid inputs, protocol
violations and numerical limits, so callers can tell a rejected device
apart from a misuse of the library.
"""


class SelfTestError(Exception):
    """Base exception for all self-testing simulator errors."""

    def __init__(self, message: str, details: dict | None = None):
        """Initialize exception with message and optional details.

        Args:
            message: Human-readable error message
            details: Optional dictionary of additional error context
        """
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def __str__(self) -> str:
        """Return string representation of exception."""
        if self.details:
            return f"{self.message} | Details: {self.details}"
        return self.message

    def diagnostic(self) -> dict:
        """JSON-ready form written to stderr by the command line."""
        return {"error": self.message, "type": type(self).__name__, "details": self.details}


class ConfigurationError(SelfTestError):
    """Exception raised for configuration-related errors.

    Examples:
        - Missing required configuration sections
        - Significance level outside (0, 1)
        - Failed to load configuration files
    """


class ValidationError(SelfTestError):
    """Exception raised for invalid values.

    Examples:
        - State vector not normalized
        - Observable that is not Hermitian or does not square to identity
        - Non-unitary local operation
        - Malformed graph file
    """


class DimensionLimitError(SelfTestError):
    """Exception raised when a dense computation exceeds the configured dimension.

    Examples:
        - Operator norm requested on a space larger than the dense limit
        - Controlled-unitary construction for too many sites
    """


class ProtocolError(SelfTestError):
    """Exception raised when a protocol step cannot be carried out as specified.

    Examples:
        - Subset violating the non-conflict condition
        - No admissible partner site for a tested vertex
        - Measurement plan whose order depends on outcomes
        - Adversary message out of turn
        - Bounds requested from a failed report
    """


class InsufficientCopiesError(ProtocolError):
    """Exception raised when a device cannot furnish the copies a test consumes."""


class PartyViolationError(ProtocolError):
    """Exception raised when a prover acts out of turn or outside its role."""


class NumericalError(SelfTestError):
    """Exception raised for numerically degenerate situations.

    Examples:
        - Sampled measurement branch with vanishing norm
    """
