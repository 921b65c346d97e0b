"""Typed views of the configuration sections used by the protocol modules."""

import logging
import os

from pydantic import BaseModel, Field, ValidationError as PydanticValidationError

from src.config.loader import ConfigLoader, get_config
from src.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

THREADS_ENV_VAR = "MBQC_SELFTEST_THREADS"


class ProtocolSettings(BaseModel):
    """Protocol constants with their documented defaults."""

    alpha: float = Field(0.05, gt=0, lt=1)
    beta: float = Field(0.9, gt=0, lt=1)
    c1: float | None = Field(None, gt=0)
    c_prime: float | None = Field(None, gt=0)
    c_double_prime: float | None = Field(None, gt=0)
    c2: float = Field(1.0, gt=0)
    safety_factor: float = Field(4.0, gt=0)
    s: int = Field(4, ge=1)
    completeness: float = Field(2 / 3, gt=0, lt=1)
    soundness: float = Field(1 / 3, gt=0, lt=1)


class SimulationSettings(BaseModel):
    """Dense-computation limits and parallelism."""

    dense_limit_exponent: int = Field(12, ge=1, le=16)
    power_iteration_exponent: int = Field(10, ge=1, le=16)
    power_iteration_tolerance: float = Field(1e-8, gt=0)
    threads: int = Field(0, ge=0)
    exhaustive_partition_limit: int = Field(12, ge=0)

    @property
    def dense_limit(self) -> int:
        """Largest total dimension for dense operator work."""
        return 2**self.dense_limit_exponent

    @property
    def power_iteration_threshold(self) -> int:
        """Dimension above which operator norms use power iteration."""
        return 2**self.power_iteration_exponent


def protocol_settings(loader: ConfigLoader | None = None) -> ProtocolSettings:
    """Build ProtocolSettings from the configuration (global loader by default).

    Raises:
        ConfigurationError: If a configured value is out of range
    """
    loader = loader or get_config()
    try:
        return ProtocolSettings(**loader.section("protocol"))
    except PydanticValidationError as exc:
        raise ConfigurationError(
            "Invalid protocol configuration", details={"errors": exc.errors()}
        ) from exc


def simulation_settings(loader: ConfigLoader | None = None) -> SimulationSettings:
    """Build SimulationSettings from the configuration (global loader by default)."""
    loader = loader or get_config()
    try:
        return SimulationSettings(**loader.section("simulation"))
    except PydanticValidationError as exc:
        raise ConfigurationError(
            "Invalid simulation configuration", details={"errors": exc.errors()}
        ) from exc


def resolve_thread_count(loader: ConfigLoader | None = None) -> int:
    """Return the worker-thread bound for group-level parallelism.

    The environment variable takes precedence over the configuration file;
    0 means one thread per CPU.
    """
    raw = os.getenv(THREADS_ENV_VAR)
    if raw not in (None, ""):
        try:
            threads = int(raw)
        except ValueError as exc:
            raise ConfigurationError(
                f"{THREADS_ENV_VAR} must be an integer", details={"value": raw}
            ) from exc
        if threads < 0:
            raise ConfigurationError(f"{THREADS_ENV_VAR} must be >= 0", details={"value": raw})
    else:
        threads = simulation_settings(loader).threads
    if threads == 0:
        threads = os.cpu_count() or 1
    logger.debug("Resolved worker threads: %d", threads)
    return threads
