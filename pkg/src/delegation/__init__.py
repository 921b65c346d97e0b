"""Three-party delegation: twirled copies, teleportation and the Verifier's frames."""

from src.delegation.adversaries import (
    MEASURERS,
    PREPARERS,
    HonestMeasurer,
    HonestPreparer,
    Measurer,
    OutOfOrderMeasurer,
    Preparer,
    ProductStatePreparer,
    TwirlPeekingMeasurer,
    TwirlSkippingPreparer,
)
from src.delegation.frames import (
    IDENTITY_FRAME,
    TWIRL_VALUES,
    X_FRAME,
    Z_FRAME,
    Frame,
    compensate,
    compensated_distribution,
    masking_distribution,
    setting_index,
    teleport_frame,
    twirl_unitary,
)
from src.delegation.harness import (
    SCENARIOS,
    DelegatedBackend,
    DelegatedSession,
    DelegationResult,
    StageInstruction,
    channel_discipline_holds,
    measurement_stage_schedule,
    run_delegation,
)
from src.delegation.messages import (
    ROUTES,
    TRANSCRIPT_SCHEMA_VERSION,
    Channel,
    MessageKind,
    Party,
    PartyMessage,
    read_transcript,
    write_transcript,
)
from src.delegation.scenario import ScenarioConfig, load_scenario
from src.delegation.teleport import BELL_PAIR, CNOT, teleport_site

__all__ = [
    "Preparer",
    "HonestPreparer",
    "ProductStatePreparer",
    "TwirlSkippingPreparer",
    "Measurer",
    "HonestMeasurer",
    "OutOfOrderMeasurer",
    "TwirlPeekingMeasurer",
    "PREPARERS",
    "MEASURERS",
    "Frame",
    "IDENTITY_FRAME",
    "Z_FRAME",
    "X_FRAME",
    "TWIRL_VALUES",
    "twirl_unitary",
    "teleport_frame",
    "setting_index",
    "compensate",
    "compensated_distribution",
    "masking_distribution",
    "SCENARIOS",
    "StageInstruction",
    "DelegatedSession",
    "DelegatedBackend",
    "DelegationResult",
    "channel_discipline_holds",
    "measurement_stage_schedule",
    "run_delegation",
    "Party",
    "MessageKind",
    "PartyMessage",
    "Channel",
    "ROUTES",
    "TRANSCRIPT_SCHEMA_VERSION",
    "write_transcript",
    "read_transcript",
    "ScenarioConfig",
    "load_scenario",
    "teleport_site",
    "BELL_PAIR",
    "CNOT",
]
