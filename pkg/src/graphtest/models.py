"""Report types for the graph-state test."""

from pydantic import BaseModel, Field, model_validator

from src.belltest import EpsilonSet, Test2Report
from src.belltest.models import REPORT_SCHEMA_VERSION


class StabilizerVerdict(BaseModel):
    """Outcome of one stabilizer-test group."""

    color: int
    m: int = Field(..., ge=0)
    passed: bool
    failing_copies: int = Field(..., ge=0)
    site_failures: dict[int, int]


class GraphSummary(BaseModel):
    name: str
    n: int
    k: int
    l_values: list[int]
    partition_mode: str


class SiteBound(BaseModel):
    """Precision levels certified for one tested site."""

    site: int
    partner: int
    color: int
    subset_index: int
    epsilons: EpsilonSet | None = None
    delta1: float | None = None
    delta2: float | None = None


class Test4Report(BaseModel):
    """Full run of the graph-state test on one device."""

    __test__ = False

    schema_version: int = REPORT_SCHEMA_VERSION
    device: str
    graph: GraphSummary
    m: int = Field(..., ge=1)
    c1: float = Field(..., gt=0.0)
    seed: int
    group_count: int = Field(..., ge=1)
    stabilizer: list[StabilizerVerdict]
    bell: list[Test2Report]
    sites: list[SiteBound]
    final_copy: int
    diagnostics: dict[int, float]
    copies_consumed: int
    passed: bool

    @model_validator(mode="after")
    def _accounting(self) -> "Test4Report":
        if self.copies_consumed != self.group_count * self.m + 1:
            raise ValueError("copies consumed must equal group_count * m + 1")
        expected = all(v.passed for v in self.stabilizer) and all(r.passed for r in self.bell)
        if self.passed != expected:
            raise ValueError("passed must equal the conjunction of the sub-tests")
        return self


class Theorem2Outputs(BaseModel):
    """Precision level and final-copy diagnostics of a passed graph-state test."""

    n: int
    m: int
    c2: float
    alpha: float
    delta: float
    diagnostic_threshold: float
    diagnostics: dict[int, float]
    violations: list[int]
