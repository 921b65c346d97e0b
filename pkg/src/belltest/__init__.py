"""Bell-pair self-test: device models, the eight-group test and c1 calibration."""

from src.belltest.calibration import calibrate_c1, honest_pass_probability
from src.belltest.devices import (
    LABELS,
    DeviceModel,
    bell_pair_graph,
    depolarized_device,
    device_from_state,
    honest_bell_device,
    honest_graph_device,
    product_state_device,
    qutrit_device,
    random_rotation_noise,
    rotated_device,
    rotated_state_device,
    trusted_observables,
)
from src.belltest.models import GROUP_SETTINGS, VERDICT_NAMES, EpsilonSet, Test2Report
from src.belltest.protocol import (
    default_epsilon_constants,
    deterministic_check_pass_probability,
    deterministic_check_probabilities,
    epsilons_from_report,
    evaluate_test2,
    group_settings,
    run_test2,
)

__all__ = [
    "DeviceModel",
    "LABELS",
    "trusted_observables",
    "device_from_state",
    "bell_pair_graph",
    "honest_bell_device",
    "honest_graph_device",
    "product_state_device",
    "rotated_device",
    "rotated_state_device",
    "depolarized_device",
    "qutrit_device",
    "random_rotation_noise",
    "EpsilonSet",
    "Test2Report",
    "GROUP_SETTINGS",
    "VERDICT_NAMES",
    "group_settings",
    "evaluate_test2",
    "run_test2",
    "epsilons_from_report",
    "default_epsilon_constants",
    "deterministic_check_probabilities",
    "deterministic_check_pass_probability",
    "calibrate_c1",
    "honest_pass_probability",
]
