"""The adaptive measurement as a channel built from controlled observables.

Each step j attaches a trusted register prepared in |+>, applies the step's
observable to its site controlled on that register (and on the readouts of
the earlier registers), then a Hadamard on the register. Reading the
registers in the computational basis gives the outcomes, register value 0
meaning +1.
"""

import itertools
import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from src.belltest import DeviceModel
from src.certify.plan import AdaptivePlan, histories
from src.config import simulation_settings
from src.exceptions import ValidationError
from src.extraction import check_dense_limit
from src.hilbert import HADAMARD, PureState, apply_operator, branch, trusted_matrix

logger = logging.getLogger(__name__)

MatrixFor = Callable[[int, str], np.ndarray]

PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)


def device_matrices(device: DeviceModel) -> MatrixFor:
    """Step matrices taken from the device's observables (identity for "I")."""

    def matrix_for(site: int, label: str) -> np.ndarray:
        if label == "I":
            return np.eye(device.dims[site], dtype=complex)
        return device.observable(site, label).matrix

    return matrix_for


def trusted_matrices(site: int, label: str) -> np.ndarray:
    return trusted_matrix(label)


def apply_steps(
    tensor: np.ndarray,
    plan: AdaptivePlan,
    matrix_for: MatrixFor,
    axis_of: Callable[[int], int],
    register_base: int,
    steps: int | None = None,
) -> np.ndarray:
    """Apply W_steps to ``tensor``.

    Site axes come first and are located with ``axis_of``; register j sits at
    axis ``register_base + j``. Trailing axes after the registers are carried
    along untouched.
    """
    steps = plan.n if steps is None else steps
    tensor = np.array(tensor, dtype=complex)
    for j in range(steps):
        site = plan.order[j]
        axis = axis_of(site)
        for history in histories(j):
            label = plan.basis(j, history)
            if label == "I":
                continue
            index: list = [slice(None)] * tensor.ndim
            for i, outcome in enumerate(history):
                index[register_base + i] = 0 if outcome == 1 else 1
            index[register_base + j] = 1
            block = tensor[tuple(index)]
            tensor[tuple(index)] = apply_operator(block, axis, matrix_for(site, label))
        tensor = apply_operator(tensor, register_base + j, HADAMARD)
    return tensor


def _plus_registers(n: int) -> np.ndarray:
    registers = np.ones((), dtype=complex)
    for _ in range(n):
        registers = np.multiply.outer(registers, PLUS)
    return registers


@dataclass(frozen=True)
class LambdaChannel:
    """Kraus operators K_k of the adaptive measurement, one per outcome string.

    ``kraus[k]`` maps the untrusted input space to itself; k enumerates
    outcome strings in step order with step 0 most significant and bit 0
    meaning +1.
    """

    plan: AdaptivePlan
    dims: tuple[int, ...]
    kraus: np.ndarray

    @property
    def outcomes(self) -> int:
        return self.kraus.shape[0]

    def povm(self) -> np.ndarray:
        """M_k = K_k^dagger K_k, shape (2^n, D, D)."""
        return np.einsum("kij,kil->kjl", self.kraus.conj(), self.kraus)

    def distribution(self, state: PureState | np.ndarray) -> np.ndarray:
        """Outcome distribution of a pure state or a density matrix."""
        if isinstance(state, PureState):
            amplitudes = self.kraus @ state.amps
            return np.sum(np.abs(amplitudes) ** 2, axis=1)
        rho = np.asarray(state, dtype=complex)
        return np.real(np.einsum("kij,jl,kil->k", self.kraus, rho, self.kraus.conj()))


def build_lambda(device: DeviceModel, plan: AdaptivePlan, dense_limit: int | None = None) -> LambdaChannel:
    """Realize the plan on ``device`` as a channel to the n-bit outcome register.

    Raises:
        ValidationError: If the plan and the device disagree on the number of sites
        DimensionLimitError: If the device dimension times 2^n exceeds the dense limit
    """
    if plan.n != device.n_sites:
        raise ValidationError("Plan and device disagree on the number of sites",
                              details={"plan": plan.n, "device": device.n_sites})
    limit = simulation_settings().dense_limit if dense_limit is None else dense_limit
    dims = device.dims
    check_dense_limit((*dims, 2**plan.n), limit)

    total = int(np.prod(dims))
    n_sys = len(dims)
    # trailing axis enumerates the input basis
    start = np.multiply.outer(np.eye(total, dtype=complex).reshape(*dims, total), _plus_registers(plan.n))
    start = np.moveaxis(start, n_sys, -1)
    out = apply_steps(start, plan, device_matrices(device), lambda site: site, n_sys)
    kraus = out.reshape(total, 2**plan.n, total).transpose(1, 0, 2)
    logger.debug("Built Lambda for %s: %d outcomes, input dimension %d", device.name, 2**plan.n, total)
    return LambdaChannel(plan, dims, np.ascontiguousarray(kraus))


def w_operator(
    dims: tuple[int, ...], plan: AdaptivePlan, matrix_for: MatrixFor, steps: int
) -> np.ndarray:
    """Dense W_steps on (sites) (x) (registers), shape (D 2^n, D 2^n)."""
    n_sys = len(dims)
    size = int(np.prod(dims)) * 2**plan.n
    start = np.eye(size, dtype=complex).reshape(*dims, *([2] * plan.n), size)
    return apply_steps(start, plan, matrix_for, lambda site: site, n_sys, steps).reshape(size, size)


def sequential_distribution(device: DeviceModel, plan: AdaptivePlan) -> np.ndarray:
    """Outcome distribution by measuring step after step with exact branching."""
    if plan.n != device.n_sites:
        raise ValidationError("Plan and device disagree on the number of sites",
                              details={"plan": plan.n, "device": device.n_sites})
    probabilities = np.zeros(2**plan.n)

    def walk(state: PureState, history: tuple[int, ...], weight: float) -> None:
        j = len(history)
        if j == plan.n:
            probabilities[outcome_index(history)] += weight
            return
        label = plan.basis(j, history)
        if label == "I":
            walk(state, (*history, 1), weight)
            return
        site = plan.order[j]
        obs = device.observable(site, label)
        for outcome in (1, -1):
            p, post = branch(state, obs, outcome)
            if post is not None:
                walk(post, (*history, outcome), weight * p)

    walk(device.state, (), 1.0)
    return probabilities


def outcome_index(history: tuple[int, ...]) -> int:
    """Flat index of an outcome string (+1 -> 0)."""
    index = 0
    for outcome in history:
        index = 2 * index + (0 if outcome == 1 else 1)
    return index


def outcome_strings(n: int) -> list[tuple[int, ...]]:
    return list(itertools.product((1, -1), repeat=n))


def povm_element(channel: LambdaChannel, accept: set[tuple[int, ...]]) -> np.ndarray:
    """Sum of M_k over the accepted outcome strings."""
    povm = channel.povm()
    element = np.zeros(povm.shape[1:], dtype=complex)
    for history in accept:
        element += povm[outcome_index(tuple(history))]
    return element


def parity_accept_set(n: int, parity: int = 1) -> set[tuple[int, ...]]:
    """Outcome strings whose product equals ``parity``."""
    return {h for h in outcome_strings(n) if int(np.prod(h)) == parity}
