"""Dense pure-state simulation core."""

from src.hilbert.operators import (
    A0,
    A1,
    HADAMARD,
    IDENTITY2,
    PAULI_X,
    PAULI_Z,
    SETTING_ANGLES,
    SETTINGS,
    embed,
    is_unitary,
    rotation_y,
    trusted_matrix,
    xz_observable,
)
from src.hilbert.simulate import (
    apply_local,
    apply_operator,
    branch,
    expectation,
    joint_distribution,
    make_graph_state,
    measure,
    outcome_probability,
    reduced_density_matrix,
)
from src.hilbert.state import BinaryObservable, MeasurementRecord, PureState

__all__ = [
    "PureState",
    "BinaryObservable",
    "MeasurementRecord",
    "make_graph_state",
    "measure",
    "branch",
    "outcome_probability",
    "expectation",
    "apply_local",
    "apply_operator",
    "joint_distribution",
    "reduced_density_matrix",
    "IDENTITY2",
    "PAULI_X",
    "PAULI_Z",
    "HADAMARD",
    "A0",
    "A1",
    "SETTINGS",
    "SETTING_ANGLES",
    "embed",
    "is_unitary",
    "rotation_y",
    "trusted_matrix",
    "xz_observable",
]
