"""Report envelope and oracle results emitted by the command line."""

from typing import Any

from pydantic import BaseModel, Field

from src.belltest.models import REPORT_SCHEMA_VERSION


class RunConfig(BaseModel):
    """Parameter echo embedded in every report."""

    command: str
    seed: int | None = Field(None, ge=0)
    m: int | None = None
    c1: float | None = None
    alpha: float = Field(..., gt=0, lt=1)
    beta: float = Field(..., gt=0, lt=1)
    extra: dict[str, Any] = Field(default_factory=dict)


class OracleCheck(BaseModel):
    """One brute-force cross-check."""

    name: str
    passed: bool
    cases: int
    worst: float = 0.0
    detail: str = ""


class OracleReport(BaseModel):
    schema_version: int = REPORT_SCHEMA_VERSION
    checks: list[OracleCheck]
    passed: bool
