"""Value types of the dense simulator: states, observables, measurement records.

Amplitudes are stored with site 0 as the most significant index, so a state
on dims (d0, d1, ..., dn-1) reshapes to a tensor of that shape directly.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from src.exceptions import ValidationError
from src.hilbert.operators import is_hermitian, squares_to_identity

NORM_TOLERANCE = 1e-12


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector over a composite system with per-site dimensions."""

    dims: tuple[int, ...]
    amps: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ValidationError("State needs at least one site of positive dimension",
                                  details={"dims": dims})
        amps = np.array(self.amps, dtype=complex).reshape(-1)
        if amps.size != int(np.prod(dims)):
            raise ValidationError(
                "Amplitude count does not match the product of site dimensions",
                details={"dims": dims, "length": int(amps.size)},
            )
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValidationError("State is not normalized", details={"norm_squared": norm})
        amps.flags.writeable = False
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_amplitudes(cls, dims, amps, normalize: bool = False) -> "PureState":
        """Build a state, optionally rescaling the amplitudes to unit norm."""
        vector = np.asarray(amps, dtype=complex).reshape(-1)
        if normalize:
            norm = np.linalg.norm(vector)
            if norm == 0:
                raise ValidationError("Cannot normalize the zero vector")
            vector = vector / norm
        return cls(tuple(dims), vector)

    @classmethod
    def basis_state(cls, dims, index: tuple[int, ...]) -> "PureState":
        """Computational basis state with the given per-site levels."""
        dims = tuple(dims)
        vector = np.zeros(int(np.prod(dims)), dtype=complex)
        vector[np.ravel_multi_index(index, dims)] = 1.0
        return cls(dims, vector)

    @classmethod
    def product_state(cls, vectors: list) -> "PureState":
        """Tensor product of normalized single-site vectors."""
        dims = tuple(len(v) for v in vectors)
        amps = np.array([1.0], dtype=complex)
        for v in vectors:
            amps = np.kron(amps, np.asarray(v, dtype=complex))
        return cls.from_amplitudes(dims, amps, normalize=True)

    @property
    def n_sites(self) -> int:
        return len(self.dims)

    @property
    def dimension(self) -> int:
        return int(self.amps.size)

    def as_tensor(self) -> np.ndarray:
        """Read-only tensor view with one axis per site."""
        return self.amps.reshape(self.dims)

    def inner(self, other: "PureState") -> complex:
        """<self|other>."""
        if self.dims != other.dims:
            raise ValidationError("Dimension mismatch", details={"a": self.dims, "b": other.dims})
        return complex(np.vdot(self.amps, other.amps))

    def fidelity(self, other: "PureState") -> float:
        """|<self|other>|^2."""
        return abs(self.inner(other)) ** 2

    def tensor(self, other: "PureState") -> "PureState":
        """self ⊗ other, with self's sites first."""
        return PureState(self.dims + other.dims, np.kron(self.amps, other.amps))


@dataclass(frozen=True)
class BinaryObservable:
    """Hermitian ±1-spectrum operator attached to one site."""

    site: int
    matrix: np.ndarray = field(repr=False)
    label: str = ""

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValidationError("Observable matrix must be square",
                                  details={"shape": matrix.shape})
        if self.site < 0:
            raise ValidationError("Site index must be non-negative", details={"site": self.site})
        if not is_hermitian(matrix):
            raise ValidationError("Observable is not Hermitian",
                                  details={"site": self.site, "label": self.label})
        if not squares_to_identity(matrix):
            raise ValidationError("Observable does not square to the identity",
                                  details={"site": self.site, "label": self.label})
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @cached_property
    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        """Spectral projectors (I + O)/2 and (I - O)/2 for outcomes +1 and -1."""
        identity = np.eye(self.dim, dtype=complex)
        return (identity + self.matrix) / 2, (identity - self.matrix) / 2

    def projector(self, outcome: int) -> np.ndarray:
        if outcome not in (1, -1):
            raise ValidationError("Outcome must be +1 or -1", details={"outcome": outcome})
        return self.projectors[0] if outcome == 1 else self.projectors[1]

    def on_site(self, site: int) -> "BinaryObservable":
        """Same matrix attached to another site."""
        return BinaryObservable(site, self.matrix, self.label)


@dataclass(frozen=True)
class MeasurementRecord:
    """One measurement: which site, which setting, which ±1 outcome."""

    site: int
    setting: str
    outcome: int

    def __post_init__(self) -> None:
        if self.outcome not in (1, -1):
            raise ValidationError("Outcome must be +1 or -1", details={"outcome": self.outcome})
