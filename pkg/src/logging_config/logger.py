"""Logging setup for simulator runs.

Console records go to stderr; stdout is reserved for JSON reports. Every
record carries a ``run`` attribute naming the command and seed of the
current run ("-" outside a run), so lines written by group worker threads
can be traced back to the run that produced them.
"""

import logging
import sys
from pathlib import Path

from src.config import ConfigLoader
from src.exceptions import ConfigurationError

DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - [%(run)s] %(message)s"

# read by group worker threads, so not a contextvar
_run_label = "-"


class RunLabelFilter(logging.Filter):
    """Stamp each record with the current run label."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.run = _run_label
        return True


def set_run_label(command: str | None, seed: int | None = None) -> None:
    """Label subsequent records with ``command`` and ``seed``; None clears the label."""
    global _run_label  # pylint: disable=global-statement
    if command is None:
        _run_label = "-"
    elif seed is None:
        _run_label = command
    else:
        _run_label = f"{command} seed={seed}"


def run_label() -> str:
    return _run_label


def _level_value(level: str) -> int:
    value = logging.getLevelName(str(level).upper())
    if not isinstance(value, int):
        raise ConfigurationError(f"Unknown log level: {level}", details={"level": level})
    return value


def setup_logging(
    level: str = "INFO",
    log_format: str | None = None,
    log_file: str | None = None,
) -> None:
    """Configure the root logger with a stderr handler and an optional file handler.

    Existing root handlers are replaced, so repeated calls (one per CLI
    invocation in tests) do not duplicate output.

    Args:
        level: Logging level name (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_format: Handler format; may use ``%(run)s``
        log_file: Optional log file path, parent directories are created

    Raises:
        ConfigurationError: If ``level`` is not a logging level name
    """
    value = _level_value(level)
    formatter = logging.Formatter(log_format or DEFAULT_FORMAT)
    run_filter = RunLabelFilter()

    root_logger = logging.getLogger()
    root_logger.setLevel(value)
    root_logger.handlers.clear()

    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_path))

    for handler in handlers:
        handler.setLevel(value)
        handler.setFormatter(formatter)
        handler.addFilter(run_filter)
        root_logger.addHandler(handler)

    root_logger.debug("Logging configured: level=%s file=%s", level, log_file or "-")


def configure_from(loader: ConfigLoader, level: str | None = None) -> None:
    """Apply the ``logging`` section of ``loader``; ``level`` overrides the configured level."""
    setup_logging(
        level=level or loader.get("logging.level") or "INFO",
        log_format=loader.get("logging.format"),
        log_file=loader.get("logging.file_path"),
    )
