"""Configuration management package."""

from src.config.loader import ConfigLoader, get_config, set_config
from src.config.settings import (
    ProtocolSettings,
    SimulationSettings,
    protocol_settings,
    resolve_thread_count,
    simulation_settings,
)
from src.config.validator import ConfigValidator

__all__ = [
    "ConfigLoader",
    "get_config",
    "set_config",
    "ConfigValidator",
    "ProtocolSettings",
    "SimulationSettings",
    "protocol_settings",
    "simulation_settings",
    "resolve_thread_count",
]
