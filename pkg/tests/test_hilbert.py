"""Tests for the dense pure-state core."""

import math

import numpy as np
import pytest

from src.belltest import bell_pair_graph
from src.exceptions import NumericalError, ValidationError
from src.graphs import path_graph
from src.hilbert import (
    A0,
    A1,
    PAULI_X,
    PAULI_Z,
    SETTINGS,
    BinaryObservable,
    PureState,
    apply_local,
    branch,
    embed,
    expectation,
    joint_distribution,
    make_graph_state,
    measure,
    outcome_probability,
    reduced_density_matrix,
    rotation_y,
    trusted_matrix,
    xz_observable,
)

SQRT2 = math.sqrt(2.0)


def _obs(site, label):
    return BinaryObservable(site, trusted_matrix(label), label)


class TestPureState:
    """Test suite for PureState construction."""

    def test_rejects_unnormalized(self):
        """Test a non-normalized vector is refused."""
        with pytest.raises(ValidationError):
            PureState((2,), np.array([1.0, 1.0]))

    def test_from_amplitudes_normalizes(self):
        """Test normalize=True rescales the vector."""
        state = PureState.from_amplitudes((2,), [3.0, 4.0], normalize=True)
        assert np.allclose(state.amps, [0.6, 0.8])

    def test_dimension_mismatch(self):
        """Test the amplitude count must match the site dimensions."""
        with pytest.raises(ValidationError):
            PureState((2, 3), np.ones(5) / math.sqrt(5))

    def test_basis_and_product(self):
        """Test basis and product constructors agree."""
        basis = PureState.basis_state((2, 3), (1, 2))
        product = PureState.product_state([[0, 1], [0, 0, 1]])
        assert basis.fidelity(product) == pytest.approx(1.0)
        assert basis.dims == (2, 3)

    def test_tensor_orders_sites(self):
        """Test self's sites come first in a tensor product."""
        state = PureState.basis_state((2,), (0,)).tensor(PureState.basis_state((3,), (2,)))
        assert state.dims == (2, 3)
        assert state.as_tensor()[0, 2] == pytest.approx(1.0)


class TestOperators:
    """Test suite for trusted operators."""

    def test_settings_are_xz_plane_angles(self):
        """Test Z, A0, X, A1 sit at Bloch angles 0, pi/4, pi/2, 3pi/4."""
        for index, label in enumerate(SETTINGS):
            assert np.allclose(xz_observable(index * math.pi / 4), trusted_matrix(label))

    def test_a_operators(self):
        """Test A(0) and A(1) are the normalized sum and difference of X and Z."""
        assert np.allclose(A0, (PAULI_X + PAULI_Z) / SQRT2)
        assert np.allclose(A1, (PAULI_X - PAULI_Z) / SQRT2)

    def test_rotation_turns_bloch_vector(self):
        """Test conjugation by rotation_y(theta) moves Z to angle theta."""
        theta = 0.3
        rotation = rotation_y(theta)
        assert np.allclose(rotation @ PAULI_Z @ rotation.conj().T, xz_observable(theta))

    def test_embed_keeps_binary_spectrum(self):
        """Test embedding X in a qutrit gives a valid observable."""
        obs = BinaryObservable(0, embed(PAULI_X, 3), "X")
        assert obs.dim == 3

    def test_observable_must_square_to_identity(self):
        """Test a non-involutive Hermitian matrix is refused."""
        with pytest.raises(ValidationError):
            BinaryObservable(0, np.diag([1.0, 0.5]))

    def test_unknown_label(self):
        """Test unknown operator labels raise KeyError."""
        with pytest.raises(KeyError):
            trusted_matrix("Y")


class TestMeasurement:
    """Test suite for measurement and expectations."""

    def test_bell_correlations(self):
        """Test the ideal correlations of the two-vertex graph state."""
        state = make_graph_state(bell_pair_graph())
        assert expectation(state, [_obs(0, "X"), _obs(1, "Z")]) == pytest.approx(1.0, abs=1e-12)
        assert expectation(state, [_obs(0, "Z"), _obs(1, "X")]) == pytest.approx(1.0, abs=1e-12)
        assert expectation(state, [_obs(0, "X"), _obs(1, "X")]) == pytest.approx(0.0, abs=1e-12)
        a0_sum = expectation(state, [_obs(0, "A0"), _obs(1, "Z")]) + expectation(
            state, [_obs(0, "A0"), _obs(1, "X")]
        )
        assert a0_sum == pytest.approx(SQRT2, abs=1e-12)

    def test_graph_state_stabilizers(self):
        """Test every K_v = X_v prod Z_N(v) has expectation one on a path."""
        graph = path_graph(4)
        state = make_graph_state(graph)
        for v in range(graph.n):
            ops = [_obs(v, "X")] + [_obs(u, "Z") for u in graph.neighbours(v)]
            assert expectation(state, ops) == pytest.approx(1.0, abs=1e-12)

    def test_measure_threshold_rule(self):
        """Test outcome +1 iff the uniform is below P(+1)."""
        state = PureState.product_state([[math.cos(0.4), math.sin(0.4)]])
        p_plus = outcome_probability(state, _obs(0, "Z"))
        assert measure(state, _obs(0, "Z"), p_plus - 1e-9)[0] == 1
        assert measure(state, _obs(0, "Z"), p_plus + 1e-9)[0] == -1

    def test_measure_collapses(self):
        """Test the post-measurement state is the matching eigenvector."""
        state = make_graph_state(bell_pair_graph())
        outcome, post = measure(state, _obs(0, "Z"), 0.1)
        assert outcome == 1
        assert expectation(post, [_obs(0, "Z")]) == pytest.approx(1.0)
        assert expectation(post, [_obs(1, "X")]) == pytest.approx(1.0)

    def test_degenerate_branch_raises(self):
        """Test sampling a zero-weight branch raises NumericalError."""
        state = PureState.basis_state((2,), (0,))
        with pytest.raises(NumericalError):
            measure(state, _obs(0, "Z"), 1.0)

    def test_branch_weights_sum_to_one(self):
        """Test both branches together carry unit probability."""
        state = make_graph_state(path_graph(3))
        total = sum(branch(state, _obs(1, "A1"), o)[0] for o in (1, -1))
        assert total == pytest.approx(1.0)

    def test_joint_distribution_matches_expectation(self):
        """Test the joint distribution reproduces a two-point correlator."""
        state = make_graph_state(bell_pair_graph())
        dist = joint_distribution(state, [_obs(0, "A0"), _obs(1, "Z")])
        correlator = dist[0, 0] + dist[1, 1] - dist[0, 1] - dist[1, 0]
        assert dist.sum() == pytest.approx(1.0)
        assert correlator == pytest.approx(expectation(state, [_obs(0, "A0"), _obs(1, "Z")]))

    def test_reduced_density_matrix_of_bell_pair(self):
        """Test one half of the ideal pair is maximally mixed."""
        rho = reduced_density_matrix(make_graph_state(bell_pair_graph()), [0])
        assert np.allclose(rho, np.eye(2) / 2)

    def test_apply_local_requires_unitary(self):
        """Test a non-unitary local map is refused."""
        state = PureState.basis_state((2,), (0,))
        with pytest.raises(ValidationError):
            apply_local(state, 0, np.diag([1.0, 0.0]))

    def test_distinct_sites_required(self):
        """Test expectations of two observables on one site are refused."""
        state = make_graph_state(bell_pair_graph())
        with pytest.raises(ValidationError):
            expectation(state, [_obs(0, "X"), _obs(0, "Z")])
