"""Local isometries that pull a trusted Bell pair out of an untrusted two-site device."""

import logging
import math

import numpy as np

from src.belltest import DeviceModel
from src.exceptions import DimensionLimitError, ValidationError
from src.extraction.models import IsometryBundle

logger = logging.getLogger(__name__)

KET0 = np.array([1.0, 0.0], dtype=complex)
KET1 = np.array([0.0, 1.0], dtype=complex)
KET_PLUS = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
KET_MINUS = np.array([1.0, -1.0], dtype=complex) / math.sqrt(2.0)


def _column(vector: np.ndarray) -> np.ndarray:
    return vector.reshape(2, 1)


def site_isometry(control: np.ndarray, flip: np.ndarray, basis: tuple[np.ndarray, np.ndarray]) -> np.ndarray:
    """kron(P+, |b0>) + kron(flip P-, |b1>) with P+- the eigenprojectors of ``control``.

    Returns a (2d, d) matrix whose output index is (site, trusted qubit).
    """
    dim = control.shape[0]
    identity = np.eye(dim, dtype=complex)
    plus = (identity + control) / 2.0
    minus = (identity - control) / 2.0
    return np.kron(plus, _column(basis[0])) + np.kron(flip @ minus, _column(basis[1]))


def check_dense_limit(dims: tuple[int, ...], limit: int) -> None:
    """Raise DimensionLimitError when dense operators on ``dims`` would exceed ``limit``."""
    total = int(np.prod(dims))
    if total > limit:
        raise DimensionLimitError(
            "Total dimension exceeds the dense simulation limit",
            details={"dims": list(dims), "total": total, "limit": limit},
        )


def build_isometries(device: DeviceModel, sites: tuple[int, int] = (0, 1)) -> IsometryBundle:
    """Isometries of both sites and the junk vector of ``device``.

    Site 1 uses Z' as control and X' as flip with a |0> ancilla; site 2 uses X'
    as control and Z' as flip with a |+> ancilla. The junk vector is
    (sqrt(2)/4)(I + Z1')(I + X2') psi'.
    """
    if device.n_sites != 2:
        raise ValidationError("Extraction needs a two-site device", details={"dims": list(device.dims)})
    z1 = device.observable(sites[0], "Z").matrix
    x1 = device.observable(sites[0], "X").matrix
    z2 = device.observable(sites[1], "Z").matrix
    x2 = device.observable(sites[1], "X").matrix
    u1 = site_isometry(z1, x1, (KET0, KET1))
    u2 = site_isometry(x2, z2, (KET_PLUS, KET_MINUS))

    psi = device.state.as_tensor()
    d1, d2 = psi.shape
    projected = (np.eye(d1) + z1) @ psi @ (np.eye(d2) + x2).T
    junk = math.sqrt(2.0) / 4.0 * projected
    return IsometryBundle(u1=u1, u2=u2, junk=junk)


def apply_isometries(bundle: IsometryBundle, tensor: np.ndarray) -> np.ndarray:
    """U1 (x) U2 applied to a (d1, d2) tensor; result ordered (junk1, junk2, trusted1, trusted2)."""
    d1, d2 = tensor.shape
    v1 = bundle.u1.reshape(d1, 2, d1)
    v2 = bundle.u2.reshape(d2, 2, d2)
    return np.einsum("iak,jbl,kl->ijab", v1, v2, tensor)


def adjoint_isometries(bundle: IsometryBundle, tensor: np.ndarray) -> np.ndarray:
    """(U1 (x) U2)^dagger applied to a (d1, d2, 2, 2) tensor."""
    d1, d2 = tensor.shape[:2]
    v1 = bundle.u1.reshape(d1, 2, d1).conj()
    v2 = bundle.u2.reshape(d2, 2, d2).conj()
    return np.einsum("iak,jbl,ijab->kl", v1, v2, tensor)


def spectral_norm(
    matrix: np.ndarray,
    threshold: int = 2**10,
    tolerance: float = 1e-8,
    max_iterations: int = 2000,
    seed: int = 0,
) -> float:
    """Largest singular value of ``matrix``.

    Dense SVD up to ``threshold`` rows or columns; power iteration on M^dagger M
    beyond that, stopping once successive estimates agree to ``tolerance``.
    """
    matrix = np.asarray(matrix, dtype=complex)
    if max(matrix.shape) <= threshold:
        return float(np.linalg.norm(matrix, 2))

    logger.warning("Using power iteration for a %dx%d operator norm", *matrix.shape)
    rng = np.random.default_rng(seed)
    x = rng.normal(size=matrix.shape[1]) + 1j * rng.normal(size=matrix.shape[1])
    x /= np.linalg.norm(x)
    estimate = 0.0
    for _ in range(max_iterations):
        y = matrix.conj().T @ (matrix @ x)
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            return 0.0
        x = y / norm
        new_estimate = math.sqrt(norm)
        if abs(new_estimate - estimate) <= tolerance * max(new_estimate, 1.0):
            return new_estimate
        estimate = new_estimate
    logger.warning("Power iteration did not converge in %d steps", max_iterations)
    return estimate


def operator_deviation(isometry: np.ndarray, untrusted: np.ndarray, trusted: np.ndarray, **norm_options) -> float:
    """|| U O' - (I_J (x) O) U || for a site isometry U of shape (J*2, d).

    The output index of ``isometry`` is (junk, trusted qubit), so the trusted
    observable acts on the last factor.
    """
    junk_dim = isometry.shape[0] // trusted.shape[0]
    lifted = np.kron(np.eye(junk_dim, dtype=complex), trusted)
    return spectral_norm(isometry @ untrusted - lifted @ isometry, **norm_options)
