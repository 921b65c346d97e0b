"""Certification of adaptive measurements on an extracted graph state."""

from src.certify.bounds import incorrect_accept_bound, povm_bound, state_error_bound
from src.certify.lambda_map import (
    LambdaChannel,
    apply_steps,
    build_lambda,
    device_matrices,
    outcome_index,
    outcome_strings,
    parity_accept_set,
    povm_element,
    sequential_distribution,
    trusted_matrices,
    w_operator,
)
from src.certify.models import (
    AcceptDifference,
    CertificationMargins,
    PrefixMargin,
    StateCertification,
)
from src.certify.plan import PLAN_LABELS, AdaptivePlan, StepRule, histories
from src.certify.verify import (
    accept_difference,
    grouped_isometry,
    margin_table_csv,
    observable_deviation,
    povm_deviation,
    run_battery,
    site_isometries,
    state_certification,
    verify_proposition_F,
)

__all__ = [
    "AdaptivePlan",
    "StepRule",
    "PLAN_LABELS",
    "histories",
    "LambdaChannel",
    "build_lambda",
    "apply_steps",
    "w_operator",
    "device_matrices",
    "trusted_matrices",
    "sequential_distribution",
    "povm_element",
    "parity_accept_set",
    "outcome_index",
    "outcome_strings",
    "povm_bound",
    "state_error_bound",
    "incorrect_accept_bound",
    "PrefixMargin",
    "StateCertification",
    "AcceptDifference",
    "CertificationMargins",
    "site_isometries",
    "grouped_isometry",
    "observable_deviation",
    "povm_deviation",
    "verify_proposition_F",
    "state_certification",
    "accept_difference",
    "run_battery",
    "margin_table_csv",
]
