"""Dense pure-state operations: graph states, local maps, measurement, expectations."""

import logging
from collections.abc import Iterable, Sequence

import numpy as np

from src.exceptions import NumericalError, ValidationError
from src.hilbert.operators import is_unitary
from src.hilbert.state import BinaryObservable, PureState

logger = logging.getLogger(__name__)

BRANCH_NORM_FLOOR = 1e-14


def _check_site(state: PureState, site: int, dim: int) -> None:
    if not 0 <= site < state.n_sites:
        raise ValidationError("Site index out of range",
                              details={"site": site, "sites": state.n_sites})
    if state.dims[site] != dim:
        raise ValidationError(
            "Operator dimension does not match the site",
            details={"site": site, "site_dim": state.dims[site], "operator_dim": dim},
        )


def apply_operator(tensor: np.ndarray, site: int, matrix: np.ndarray) -> np.ndarray:
    """Apply ``matrix`` on axis ``site`` of an amplitude tensor (no checks, any operator)."""
    moved = np.tensordot(matrix, tensor, axes=([1], [site]))
    return np.moveaxis(moved, 0, site)


def make_graph_state(graph) -> PureState:
    """Graph state prod CZ_ij |+>^n for a graph exposing ``n`` and ``edges``.

    Raises:
        ValidationError: On self-loops, duplicate edges or out-of-range vertices
    """
    n = int(graph.n)
    if n < 1:
        raise ValidationError("Graph state needs at least one vertex")
    seen: set[tuple[int, int]] = set()
    for u, v in graph.edges:
        if u == v:
            raise ValidationError("Self-loop in graph", details={"vertex": u})
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValidationError("Duplicate edge in graph", details={"edge": key})
        if not (0 <= key[0] and key[1] < n):
            raise ValidationError("Edge endpoint out of range", details={"edge": key, "n": n})
        seen.add(key)

    index = np.arange(2**n)
    bits = (index[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1
    parity = np.zeros(2**n, dtype=np.int64)
    for u, v in seen:
        parity ^= bits[:, u] & bits[:, v]
    amps = np.where(parity == 1, -1.0, 1.0) / np.sqrt(2.0**n)
    return PureState((2,) * n, amps.astype(complex))


def apply_local(state: PureState, site: int, unitary: np.ndarray) -> PureState:
    """Apply a unitary on one site.

    Raises:
        ValidationError: If the matrix is not unitary within 1e-10 or mis-sized
    """
    unitary = np.asarray(unitary, dtype=complex)
    _check_site(state, site, unitary.shape[0])
    if not is_unitary(unitary):
        raise ValidationError("Local operation is not unitary", details={"site": site})
    tensor = apply_operator(state.as_tensor(), site, unitary)
    return PureState.from_amplitudes(state.dims, tensor, normalize=True)


def branch(state: PureState, obs: BinaryObservable, outcome: int) -> tuple[float, PureState | None]:
    """Probability of ``outcome`` and the normalized post-measurement state.

    The post state is None when the branch has (numerically) zero weight.
    """
    _check_site(state, obs.site, obs.dim)
    projected = apply_operator(state.as_tensor(), obs.site, obs.projector(outcome))
    probability = float(np.vdot(projected, projected).real)
    if np.sqrt(max(probability, 0.0)) < BRANCH_NORM_FLOOR:
        return 0.0, None
    return probability, PureState.from_amplitudes(state.dims, projected, normalize=True)


def outcome_probability(state: PureState, obs: BinaryObservable) -> float:
    """Born probability of outcome +1."""
    _check_site(state, obs.site, obs.dim)
    projected = apply_operator(state.as_tensor(), obs.site, obs.projectors[0])
    return float(np.vdot(projected, projected).real)


def measure(
    state: PureState, obs: BinaryObservable, rng_stream: np.random.Generator | float
) -> tuple[int, PureState]:
    """Projective ±1 measurement; outcome +1 iff the uniform draw is below P(+1).

    Args:
        state: State to measure
        obs: Observable on one site
        rng_stream: Generator to draw from, or a pre-drawn uniform in [0, 1)

    Returns:
        Tuple of outcome and normalized post-measurement state

    Raises:
        NumericalError: If the sampled branch has norm below 1e-14
    """
    uniform = float(rng_stream.random()) if isinstance(rng_stream, np.random.Generator) else float(
        rng_stream
    )
    p_plus = outcome_probability(state, obs)
    outcome = 1 if uniform < p_plus else -1
    _, post = branch(state, obs, outcome)
    if post is None:
        raise NumericalError(
            "Sampled measurement branch is numerically degenerate",
            details={"site": obs.site, "outcome": outcome, "p_plus": p_plus},
        )
    return outcome, post


def expectation(state: PureState, obs_list: Sequence[BinaryObservable]) -> float:
    """Exact <psi| ⊗ obs |psi> for observables on distinct sites."""
    sites = [obs.site for obs in obs_list]
    if len(set(sites)) != len(sites):
        raise ValidationError("Expectation needs observables on distinct sites",
                              details={"sites": sites})
    tensor = state.as_tensor()
    for obs in obs_list:
        _check_site(state, obs.site, obs.dim)
        tensor = apply_operator(tensor, obs.site, obs.matrix)
    return float(np.vdot(state.amps, tensor.reshape(-1)).real)


def joint_distribution(state: PureState, observables: Sequence[BinaryObservable]) -> np.ndarray:
    """Exact joint outcome distribution of single-site measurements on distinct sites.

    Returns an array of shape (2,) * k in the order of ``observables``; index 0 on an
    axis means outcome +1. Sites not listed are traced out.
    """
    sites = [obs.site for obs in observables]
    if len(set(sites)) != len(sites):
        raise ValidationError("Joint distribution needs distinct sites", details={"sites": sites})
    tensor = state.as_tensor()
    indicators = []
    for obs in observables:
        _check_site(state, obs.site, obs.dim)
        eigenvalues, eigenvectors = np.linalg.eigh(obs.matrix)
        tensor = apply_operator(tensor, obs.site, eigenvectors.conj().T)
        indicators.append(np.stack([eigenvalues > 0, eigenvalues < 0], axis=1).astype(float))

    rest = [s for s in range(state.n_sites) if s not in sites]
    probabilities = np.abs(np.transpose(tensor, sites + rest)) ** 2
    probabilities = probabilities.reshape([state.dims[s] for s in sites] + [-1]).sum(axis=-1)
    for indicator in indicators:
        probabilities = np.tensordot(probabilities, indicator, axes=([0], [0]))
    return probabilities


def reduced_density_matrix(state: PureState, sites: Iterable[int]) -> np.ndarray:
    """Density matrix of the listed sites (in the listed order), the rest traced out."""
    keep = list(sites)
    rest = [s for s in range(state.n_sites) if s not in keep]
    keep_dim = int(np.prod([state.dims[s] for s in keep]))
    matrix = np.transpose(state.as_tensor(), keep + rest).reshape(keep_dim, -1)
    return matrix @ matrix.conj().T
