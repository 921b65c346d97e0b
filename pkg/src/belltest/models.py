"""Report types for the Bell-pair self-test."""

from pydantic import BaseModel, Field, model_validator

from src.exceptions import ValidationError

REPORT_SCHEMA_VERSION = 1

# Settings (site 1, site 2) of the eight groups, in group order.
GROUP_SETTINGS: tuple[tuple[str, str], ...] = (
    ("X", "Z"),
    ("Z", "X"),
    ("A0", "Z"),
    ("A0", "X"),
    ("A1", "Z"),
    ("A1", "X"),
    ("X", "X"),
    ("Z", "Z"),
)

VERDICT_NAMES = ("eq1_xz", "eq1_zx", "eq2", "eq3", "eq4")


class EpsilonSet(BaseModel):
    """Closeness parameters of the untrusted pair to the ideal correlations."""

    eps1: float = Field(..., ge=0.0)
    eps2: float = Field(..., ge=0.0)
    eps3: float = Field(..., ge=0.0)
    eps4: float = Field(..., ge=0.0)
    eps5: float = Field(..., ge=0.0)

    @classmethod
    def from_values(cls, values) -> "EpsilonSet":
        values = list(values)
        if len(values) != 5:
            raise ValidationError("Five epsilons are required", details={"count": len(values)})
        return cls(**{f"eps{i + 1}": float(v) for i, v in enumerate(values)})

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.eps1, self.eps2, self.eps3, self.eps4, self.eps5)


class Test2Report(BaseModel):
    """Outcome of one run of the eight-group Bell-pair test."""

    __test__ = False

    schema_version: int = REPORT_SCHEMA_VERSION
    device: str
    m: int = Field(..., ge=1)
    c1: float = Field(..., gt=0.0)
    seed: int
    sites: tuple[int, int] = (0, 1)
    group_averages: list[float]
    threshold: float
    verdicts: dict[str, bool]
    epsilons: EpsilonSet | None = None
    passed: bool

    @model_validator(mode="after")
    def _passed_iff_all_verdicts(self) -> "Test2Report":
        if len(self.group_averages) != len(GROUP_SETTINGS):
            raise ValueError("eight group averages are required")
        if list(self.verdicts) != list(VERDICT_NAMES):
            raise ValueError(f"verdicts must be {VERDICT_NAMES}")
        if self.passed != all(self.verdicts.values()):
            raise ValueError("passed must equal the conjunction of the verdicts")
        return self
