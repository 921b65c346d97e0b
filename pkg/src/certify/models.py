"""Result rows of the certification checks."""

from pydantic import BaseModel, Field


class PrefixMargin(BaseModel):
    """|| (U (x) I) W'_j - (I (x) W_j)(U (x) I) || against s j delta for one plan prefix."""

    device: str
    step: int = Field(..., ge=1)
    measured: float
    bound: float
    delta: float
    holds: bool


class StateCertification(BaseModel):
    """Distance of the extracted final copy from the ideal graph state.

    ``trace_distance`` is half the trace norm of rho_T - |G><G|. Its square is
    held against the realized bound in ``holds`` and against 6 n delta + 3 alpha / m
    in ``within_closed_form``.
    """

    device: str
    n: int
    delta: float
    trace_distance: float
    trace_distance_squared: float
    fidelity: float
    diagnostics: dict[int, float]
    diagnostic_sum: float
    realized_bound: float
    closed_form_bound: float
    holds: bool
    fidelity_step_holds: bool
    within_closed_form: bool


class AcceptDifference(BaseModel):
    """Gap between untrusted and ideal acceptance of a correct-result element."""

    device: str
    untrusted_accept: float
    ideal_accept: float
    difference: float
    element_deviation: float
    trace_distance: float
    realized_bound: float
    closed_form_bound: float
    holds: bool
    within_closed_form: bool


class CertificationMargins(BaseModel):
    """One battery row: measured quantities, bounds and margins for one device."""

    device: str
    n: int
    delta: float
    povm_deviation: float
    povm_bound: float
    povm_margin: float
    state_error: float
    state_bound: float
    state_margin: float
    accept_difference: float
    accept_bound: float
    accept_margin: float
    within_closed_form: bool
    proposition_holds: bool
