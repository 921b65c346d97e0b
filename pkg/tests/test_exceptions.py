"""Tests for custom exceptions."""

import pytest

from src.exceptions import (
    ConfigurationError,
    DimensionLimitError,
    InsufficientCopiesError,
    NumericalError,
    PartyViolationError,
    ProtocolError,
    SelfTestError,
    ValidationError,
)


class TestExceptions:
    """Test suite for custom exceptions."""

    def test_base_exception(self):
        """Test base SelfTestError."""
        error = SelfTestError("Test error")
        assert str(error) == "Test error"
        assert error.message == "Test error"
        assert error.details == {}

    def test_exception_with_details(self):
        """Test exception with additional details."""
        details = {"site": 3, "dims": [2, 3]}
        error = ValidationError("Operator dimension does not match the site", details=details)
        assert error.message == "Operator dimension does not match the site"
        assert error.details == details
        assert "Details:" in str(error)

    def test_configuration_error(self):
        """Test ConfigurationError."""
        with pytest.raises(ConfigurationError):
            raise ConfigurationError("Missing config field")

    def test_dimension_limit_error(self):
        """Test DimensionLimitError."""
        with pytest.raises(DimensionLimitError):
            raise DimensionLimitError("Dense limit exceeded", details={"dimension": 2**14})

    def test_copies_are_protocol_errors(self):
        """Test InsufficientCopiesError is caught as a ProtocolError."""
        with pytest.raises(ProtocolError):
            raise InsufficientCopiesError("Device cannot furnish the copies")

    def test_party_violation_is_protocol_error(self):
        """Test PartyViolationError is caught as a ProtocolError."""
        with pytest.raises(ProtocolError):
            raise PartyViolationError("Prover 2 answered out of turn")

    def test_exception_inheritance(self):
        """Test that all exceptions inherit from base."""
        for cls in (ConfigurationError, ValidationError, DimensionLimitError, ProtocolError,
                    InsufficientCopiesError, PartyViolationError, NumericalError):
            assert issubclass(cls, SelfTestError)

    def test_diagnostic(self):
        """Test the stderr diagnostic names the concrete class."""
        error = InsufficientCopiesError("Device cannot furnish the copies", details={"needed": 8})
        assert error.diagnostic() == {
            "error": "Device cannot furnish the copies",
            "type": "InsufficientCopiesError",
            "details": {"needed": 8},
        }
