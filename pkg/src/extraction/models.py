"""Result types of isometry extraction."""

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, Field

from src.belltest.models import REPORT_SCHEMA_VERSION, EpsilonSet


class DeltaChain(BaseModel):
    """Intermediate and final precision levels derived from an EpsilonSet."""

    eps1_prime: float = Field(..., ge=0.0)
    eps2_prime: float = Field(..., ge=0.0)
    eps3_prime: float = Field(..., ge=0.0)
    eps4_prime: float = Field(..., ge=0.0)
    delta1_prime: float = Field(..., ge=0.0)
    delta2_prime: float = Field(..., ge=0.0)
    delta1: float = Field(..., ge=0.0)
    delta2: float = Field(..., ge=0.0)


class LemmaCheck(BaseModel):
    """One inequality: its dense left side against the formula right side."""

    name: str
    measured: float
    bound: float
    holds: bool
    note: str = ""


def matrix_pairs(matrix: np.ndarray) -> list[list[float]]:
    """Row-major [re, im] pairs of a complex array."""
    flat = np.asarray(matrix, dtype=complex).reshape(-1)
    return [[float(z.real), float(z.imag)] for z in flat]


class ExtractionResult(BaseModel):
    """Isometries, junk state, deviations and the bound chain for one device."""

    schema_version: int = REPORT_SCHEMA_VERSION
    device: str
    dims: tuple[int, int]
    epsilons: EpsilonSet
    chain: DeltaChain
    junk_norm: float
    deviations: dict[str, float]
    checks: list[LemmaCheck]
    all_hold: bool
    u1_shape: tuple[int, int]
    u2_shape: tuple[int, int]
    u1: list[list[float]] | None = None
    u2: list[list[float]] | None = None
    junk: list[list[float]] | None = None


@dataclass(frozen=True)
class IsometryBundle:
    """Per-site isometries and the junk vector of a two-site device.

    ``u1`` maps site 1 to (site 1, trusted qubit 1) starting the trusted qubit
    in |0>; ``u2`` maps site 2 to (site 2, trusted qubit 2) starting it in |+>.
    ``junk`` is unnormalized with shape (d1, d2).
    """

    u1: np.ndarray
    u2: np.ndarray
    junk: np.ndarray

    @property
    def junk_norm(self) -> float:
        return float(np.linalg.norm(self.junk))
