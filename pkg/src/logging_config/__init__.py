"""Logging configuration package."""

from src.logging_config.logger import (
    DEFAULT_FORMAT,
    RunLabelFilter,
    configure_from,
    run_label,
    set_run_label,
    setup_logging,
)

__all__ = [
    "DEFAULT_FORMAT",
    "RunLabelFilter",
    "configure_from",
    "run_label",
    "set_run_label",
    "setup_logging",
]
