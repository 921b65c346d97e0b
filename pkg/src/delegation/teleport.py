"""Dense teleportation of one site through a fresh Bell pair."""

import logging

import numpy as np

from src.exceptions import ValidationError
from src.hilbert import (
    HADAMARD,
    PAULI_Z,
    BinaryObservable,
    PureState,
    apply_operator,
    measure,
)

logger = logging.getLogger(__name__)

BELL_PAIR = np.array([[1.0, 0.0], [0.0, 1.0]], dtype=complex) / np.sqrt(2.0)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex).reshape(2, 2, 2, 2)


def teleport_site(
    state: PureState, site: int, rng: np.random.Generator
) -> tuple[PureState, tuple[int, int]]:
    """Teleport qubit ``site`` to a receiver qubit that takes its place.

    Returns the new state and the Bell-measurement bits (b1, b2); the receiver
    holds X^b2 Z^b1 applied to the original qubit.
    """
    if state.dims[site] != 2:
        raise ValidationError("Only qubit sites can be teleported", details={"dims": list(state.dims)})
    n = state.n_sites
    sender, receiver = n, n + 1
    tensor = np.multiply.outer(state.as_tensor(), BELL_PAIR)
    # CNOT from the site onto the sender half, then H on the site
    tensor = np.tensordot(CNOT, tensor, axes=([2, 3], [site, sender]))
    tensor = np.moveaxis(tensor, [0, 1], [site, sender])
    tensor = apply_operator(tensor, site, HADAMARD)
    extended = PureState.from_amplitudes((*state.dims, 2, 2), tensor, normalize=True)

    z_site = BinaryObservable(site, PAULI_Z, "Z")
    z_sender = BinaryObservable(sender, PAULI_Z, "Z")
    first, extended = measure(extended, z_site, rng)
    second, extended = measure(extended, z_sender, rng)
    b1, b2 = (0 if first == 1 else 1), (0 if second == 1 else 1)

    collapsed = extended.as_tensor()
    index = [slice(None)] * collapsed.ndim
    index[site] = b1
    index[sender] = b2
    remaining = collapsed[tuple(index)]
    # receiver axis is last; move it into the vacated position of the site
    remaining = np.moveaxis(remaining, -1, site)
    logger.debug("Teleported site %d with by-product bits (%d, %d)", site, b1, b2)
    return PureState.from_amplitudes(state.dims, remaining, normalize=True), (b1, b2)
