"""Delegation scenario files."""

import json
import logging
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, Field, ValidationError as PydanticValidationError, field_validator

from src.delegation.adversaries import MEASURERS, PREPARERS
from src.exceptions import ValidationError

logger = logging.getLogger(__name__)


class ScenarioConfig(BaseModel):
    """Parties, graph and protocol parameters of one delegated run."""

    name: str = "scenario"
    scenario: Literal["trusting", "teleport"] = "trusting"
    graph: str
    m: int = Field(..., ge=1)
    c1: float | None = Field(None, gt=0)
    seed: int = Field(0, ge=0)
    preparer: str = "honest"
    measurer: str = "honest"
    plan: dict[str, Any] | None = None
    transcript: str | None = None

    @field_validator("preparer")
    @classmethod
    def _known_preparer(cls, value: str) -> str:
        if value not in PREPARERS:
            raise ValueError(f"unknown preparer {value!r}; expected one of {sorted(PREPARERS)}")
        return value

    @field_validator("measurer")
    @classmethod
    def _known_measurer(cls, value: str) -> str:
        if value not in MEASURERS:
            raise ValueError(f"unknown measurer {value!r}; expected one of {sorted(MEASURERS)}")
        return value

    def graph_path(self, base: Path | None = None) -> Path:
        """Graph file, relative paths taken from ``base`` when it is given."""
        path = Path(self.graph)
        if not path.is_absolute() and base is not None and (base / path).exists():
            return base / path
        return path


def load_scenario(path: str | Path) -> ScenarioConfig:
    """Read a JSON scenario file.

    Raises:
        ValidationError: If the file is not valid JSON or misses required fields
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        config = ScenarioConfig(**data)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError("Cannot read scenario file", details={"path": str(path), "error": str(exc)}) from exc
    except PydanticValidationError as exc:
        raise ValidationError("Invalid scenario file",
                              details={"path": str(path), "errors": exc.errors()}) from exc
    logger.debug("Loaded scenario %s from %s", config.name, path)
    return config
