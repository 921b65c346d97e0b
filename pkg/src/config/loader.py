"""YAML configuration with ``${VAR}`` references resolved from the environment.

A ``.env`` file, when present, is loaded into the environment first, so a
reference like ``threads: ${MBQC_SELFTEST_THREADS}`` picks up either source.
"""

import copy
import logging
import os
from pathlib import Path
from typing import Any

import yaml
from dotenv import load_dotenv

from src.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config.yaml"


class ConfigLoader:
    """Resolved view of one configuration file.

    Lookups use dotted keys (``protocol.alpha``); a reference to an unset
    variable reads as absent, so model defaults apply.
    """

    def __init__(self, config_path: str | Path | None = None, env_path: str | Path = ".env"):
        """Load ``config_path`` (./config.yaml, else the repository file, if None) after ``env_path``."""
        if config_path is None:
            local = Path("config.yaml")
            config_path = local if local.exists() else DEFAULT_CONFIG_PATH
        self.config_path = Path(config_path)
        self.env_path = Path(env_path)
        self._config: dict[str, Any] = self._load()

    def _load(self) -> dict[str, Any]:
        if self.env_path.exists():
            load_dotenv(self.env_path)
            logger.debug("Loaded environment variables from %s", self.env_path)

        if not self.config_path.exists():
            logger.warning("Configuration file not found: %s", self.config_path)
            return {}
        try:
            with open(self.config_path, encoding="utf-8") as config_file:
                raw = yaml.safe_load(config_file) or {}
        except yaml.YAMLError as exc:
            raise ConfigurationError(
                "Configuration file is not valid YAML",
                details={"path": str(self.config_path), "error": str(exc)},
            ) from exc
        logger.debug("Loaded configuration from %s", self.config_path)
        return _resolve(raw)

    def get(self, key: str, default: Any = None) -> Any:
        """Value at dotted ``key``, or ``default`` when any part is missing or null."""
        value: Any = self._config
        for part in key.split("."):
            if not isinstance(value, dict):
                return default
            value = value.get(part)
            if value is None:
                return default
        return value

    def snapshot(self) -> dict[str, Any]:
        """Deep copy of the resolved configuration, for validation."""
        return copy.deepcopy(self._config)

    def section(self, name: str) -> dict[str, Any]:
        """Keys of one top-level section with null values dropped, so model defaults apply.

        Raises:
            ConfigurationError: If the section is present but not a mapping
        """
        raw = self._config.get(name) or {}
        if not isinstance(raw, dict):
            raise ConfigurationError(f"Section {name!r} must be a mapping", details={"value": raw})
        return {k: v for k, v in raw.items() if v is not None}


def _resolve(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: _resolve(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_resolve(item) for item in obj]
    if isinstance(obj, str) and obj.startswith("${") and obj.endswith("}"):
        return os.getenv(obj[2:-1]) or None
    return obj


_CONFIG_INSTANCE: ConfigLoader | None = None


def get_config() -> ConfigLoader:
    """Process-wide loader, created from the default paths on first use."""
    global _CONFIG_INSTANCE  # pylint: disable=global-statement
    if _CONFIG_INSTANCE is None:
        _CONFIG_INSTANCE = ConfigLoader()
    return _CONFIG_INSTANCE


def set_config(loader: ConfigLoader | None) -> None:
    """Install (or with None, drop) the global configuration instance."""
    global _CONFIG_INSTANCE  # pylint: disable=global-statement
    _CONFIG_INSTANCE = loader
