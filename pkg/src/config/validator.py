"""Configuration validator for simulator settings.

Validates configuration structure and parameter ranges before any
protocol runs, so a bad alpha or thread count fails at start-up.
"""

import logging
from typing import Any

logger = logging.getLogger(__name__)


class ConfigValidator:
    """Validates simulator configuration structure and values."""

    REQUIRED_FIELDS = {
        "protocol": ["alpha", "beta", "c2", "safety_factor", "s"],
        "simulation": ["dense_limit_exponent"],
        "reports": ["schema_version"],
        "logging": ["format"],
    }

    UNIT_INTERVAL_FIELDS = ["alpha", "beta", "completeness", "soundness"]
    POSITIVE_FIELDS = ["c1", "c_prime", "c_double_prime", "c2", "safety_factor"]
    VALID_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]

    @classmethod
    def validate(cls, config: dict[str, Any]) -> list[str]:
        """Validate configuration dictionary.

        Args:
            config: Configuration dictionary to validate

        Returns:
            List of validation error messages (empty if valid)
        """
        errors = []
        errors.extend(cls._validate_required_sections(config))
        errors.extend(cls._validate_protocol(config))
        errors.extend(cls._validate_simulation(config))
        errors.extend(cls._validate_logging(config))

        if errors:
            logger.warning("Configuration validation found %d errors", len(errors))
        else:
            logger.debug("Configuration validation passed")
        return errors

    @classmethod
    def _validate_required_sections(cls, config: dict[str, Any]) -> list[str]:
        """Validate presence of required configuration sections."""
        errors = []
        for section, fields in cls.REQUIRED_FIELDS.items():
            if section not in config or not isinstance(config[section], dict):
                errors.append(f"Missing required section: {section}")
                continue
            for field in fields:
                if field not in config[section]:
                    errors.append(f"Missing required field: {section}.{field}")
        return errors

    @classmethod
    def _validate_protocol(cls, config: dict[str, Any]) -> list[str]:
        """Validate protocol parameter ranges."""
        errors: list[str] = []
        protocol = config.get("protocol")
        if not isinstance(protocol, dict):
            return errors

        for field in cls.UNIT_INTERVAL_FIELDS:
            value = protocol.get(field)
            if value is None:
                continue
            if not isinstance(value, (int, float)) or not 0 < value < 1:
                errors.append(f"Invalid protocol.{field}: {value}. Must lie in (0, 1)")

        for field in cls.POSITIVE_FIELDS:
            value = protocol.get(field)
            if value is None:
                continue
            if not isinstance(value, (int, float)) or value <= 0:
                errors.append(f"Invalid protocol.{field}: {value}. Must be > 0")

        s = protocol.get("s")
        if s is not None and (not isinstance(s, int) or s < 1):
            errors.append(f"Invalid protocol.s: {s}. Must be an integer >= 1")
        return errors

    @classmethod
    def _validate_simulation(cls, config: dict[str, Any]) -> list[str]:
        """Validate dense limits and thread count."""
        errors: list[str] = []
        simulation = config.get("simulation")
        if not isinstance(simulation, dict):
            return errors

        exponent = simulation.get("dense_limit_exponent")
        if exponent is not None and (not isinstance(exponent, int) or not 1 <= exponent <= 16):
            errors.append(f"Invalid dense_limit_exponent: {exponent}. Must be 1-16")

        threads = simulation.get("threads")
        if threads is not None:
            try:
                if int(threads) < 0:
                    errors.append(f"Invalid threads: {threads}. Must be >= 0")
            except (TypeError, ValueError):
                errors.append(f"Invalid threads type: {threads!r}. Must be an integer")
        return errors

    @classmethod
    def _validate_logging(cls, config: dict[str, Any]) -> list[str]:
        """Validate logging configuration."""
        errors = []
        if isinstance(config.get("logging"), dict):
            level = config["logging"].get("level")
            if level and str(level).upper() not in cls.VALID_LOG_LEVELS:
                errors.append(
                    f"Invalid log level: {level}. " f"Must be one of {cls.VALID_LOG_LEVELS}"
                )
        return errors
