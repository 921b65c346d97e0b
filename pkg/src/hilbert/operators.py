"""Trusted single-qubit operators and small matrix predicates.

Binary observables in the XZ plane are indexed by their Bloch angle measured
from Z towards X: Z at 0, A0 at pi/4, X at pi/2, A1 at 3pi/4.
"""

import math

import numpy as np

IDENTITY2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
A0 = (PAULI_X + PAULI_Z) / math.sqrt(2)
A1 = (PAULI_X - PAULI_Z) / math.sqrt(2)

# Measurement settings used by the protocols, in Bloch-angle order.
SETTINGS = ("Z", "A0", "X", "A1")
SETTING_ANGLES = {"Z": 0.0, "A0": math.pi / 4, "X": math.pi / 2, "A1": 3 * math.pi / 4}
TRUSTED = {"I": IDENTITY2, "X": PAULI_X, "Z": PAULI_Z, "A0": A0, "A1": A1}


def xz_observable(angle: float) -> np.ndarray:
    """Binary observable cos(angle) Z + sin(angle) X."""
    return math.cos(angle) * PAULI_Z + math.sin(angle) * PAULI_X


def rotation_y(angle: float) -> np.ndarray:
    """Real rotation exp(-i angle Y / 2); conjugation turns Bloch vectors by ``angle``."""
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def trusted_matrix(label: str) -> np.ndarray:
    """Matrix of a trusted qubit operator by label (I, X, Z, A0, A1)."""
    try:
        return TRUSTED[label].copy()
    except KeyError as exc:
        raise KeyError(f"unknown operator label {label!r}; expected one of {sorted(TRUSTED)}") from exc


def embed(matrix: np.ndarray, dim: int, fill: float = 1.0) -> np.ndarray:
    """Embed a 2x2 operator into the top-left block of a ``dim``-level site.

    The remaining diagonal is set to ``fill`` so that a ±1 observable keeps a ±1 spectrum.
    """
    if dim < matrix.shape[0]:
        raise ValueError(f"cannot embed a {matrix.shape[0]}-level operator into dimension {dim}")
    out = np.eye(dim, dtype=complex) * fill
    size = matrix.shape[0]
    out[:size, :size] = matrix
    return out


def is_hermitian(matrix: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(matrix - matrix.conj().T), initial=0.0) <= tol)


def is_unitary(matrix: np.ndarray, tol: float = 1e-10) -> bool:
    identity = np.eye(matrix.shape[0])
    return bool(np.max(np.abs(matrix.conj().T @ matrix - identity), initial=0.0) <= tol)


def squares_to_identity(matrix: np.ndarray, tol: float = 1e-10) -> bool:
    identity = np.eye(matrix.shape[0])
    return bool(np.max(np.abs(matrix @ matrix - identity), initial=0.0) <= tol)
