"""The Verifier's side of a delegated graph-state test.

Prover 1 prepares each copy and applies the twirl it is sent; the copy reaches
Prover 2 either directly or by teleportation. The Verifier keeps a frame per
qubit, instructs Prover 2 in compensated settings and folds outcomes back,
so Test (4) runs unchanged on top of this backend.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel

from src.belltest import LABELS, DeviceModel, honest_graph_device
from src.certify import AdaptivePlan, histories, incorrect_accept_bound
from src.config import protocol_settings
from src.delegation.adversaries import HonestMeasurer, HonestPreparer, Measurer, Preparer
from src.delegation.frames import Frame, Z_FRAME, compensate, teleport_frame
from src.delegation.messages import Channel, MessageKind, Party, PartyMessage
from src.delegation.teleport import teleport_site
from src.exceptions import PartyViolationError, ProtocolError, ValidationError
from src.graphs import ColoredGraph, group_count
from src.graphtest import CopySession, MeasurementBackend, Test4Report, run_test4, theorem2_outputs
from src.hilbert import BinaryObservable, PureState, trusted_matrix
from src.seeding import TELEPORT, TWIRL, UniformCursor, copy_uniforms, stream

logger = logging.getLogger(__name__)

SCENARIOS = ("trusting", "teleport")


@dataclass(frozen=True)
class StageInstruction:
    """Stage of the computation: one site, its basis for every outcome history."""

    stage: int
    site: int
    bases: dict[tuple[int, ...], str]


def measurement_stage_schedule(graph: ColoredGraph, plan: AdaptivePlan) -> list[StageInstruction]:
    """Stages of ``plan`` on ``graph``, one per site, in plan order.

    Raises:
        ProtocolError: If the site of some stage depends on earlier outcomes
    """
    if plan.n != graph.n:
        raise ValidationError("Plan and graph disagree on the number of sites",
                              details={"plan": plan.n, "graph": graph.n})
    schedule = []
    for stage in range(plan.n):
        sites = {plan.site_at(stage, h) for h in histories(stage)}
        if len(sites) != 1:
            raise ProtocolError("Measurement order depends on outcomes",
                                details={"stage": stage, "sites": sorted(sites)})
        schedule.append(
            StageInstruction(stage, sites.pop(), {h: plan.basis(stage, h) for h in histories(stage)})
        )
    return schedule


class DelegatedSession(CopySession):
    """One copy held by Prover 2, seen through the Verifier's frames."""

    def __init__(self, backend: "DelegatedBackend", copy_index: int, state: PureState,
                 frames: list[Frame], uniforms: np.ndarray):
        super().__init__(copy_index)
        self._backend = backend
        self._state = state
        self.frames = frames
        self._cursor = UniformCursor(uniforms)

    def measure(self, site: int, label: str) -> int:
        channel = self._backend.channel
        instructed, flip = compensate(label, self.frames[site])
        channel.send(Party.VERIFIER, Party.PROVER2, MessageKind.INSTRUCTION, self.copy_index,
                     site=site, setting=instructed)
        measured, outcome, self._state = self._backend.measurer.measure(
            self._state, self.copy_index, site, instructed, self._cursor.next()
        )
        channel.send(Party.PROVER2, Party.VERIFIER, MessageKind.OUTCOME, self.copy_index,
                     site=measured, outcome=outcome)
        if measured != site or outcome not in (1, -1):
            raise PartyViolationError(
                "Prover 2 answered out of turn",
                details={"copy": self.copy_index, "instructed": site, "reported": measured},
            )
        logical = -outcome if flip else outcome
        self.outcomes[site] = logical
        return logical

    def correct_z(self, site: int) -> None:
        self.frames[site] = self.frames[site].compose(Z_FRAME)


class DelegatedBackend(MeasurementBackend):
    """Copies produced by Prover 1 and measured by Prover 2."""

    def __init__(self, graph: ColoredGraph, preparer: Preparer, measurer: Measurer,
                 scenario: str = "trusting", channel: Channel | None = None):
        if scenario not in SCENARIOS:
            raise ValidationError("Unknown delegation scenario", details={"scenario": scenario})
        super().__init__(f"delegated[{scenario}:{preparer.name}/{measurer.name}]", graph.n)
        self.graph = graph
        self.preparer = preparer
        self.measurer = measurer
        self.scenario = scenario
        self.channel = channel or Channel()
        self.measurer.request_twirl = self._refuse_twirl
        self._final: tuple[int, PureState, list[Frame]] | None = None

    def _refuse_twirl(self, copy_index: int) -> None:
        logger.warning("Prover 2 asked for the twirl of copy %d; refused", copy_index)
        self.channel.send(Party.VERIFIER, Party.PROVER2, MessageKind.REJECTION, copy_index,
                          reason="twirl request refused")

    def _transfer(self, seed: int, copy_index: int) -> tuple[PureState, list[Frame]]:
        twirl = [int(t) for t in stream(seed, TWIRL, copy_index).integers(0, 8, self.n_sites)]
        self.channel.send(Party.VERIFIER, Party.PROVER1, MessageKind.TWIRL_VECTOR, copy_index, twirl=twirl)
        state = self.preparer.prepare(seed, copy_index, twirl)
        frames = [Frame.twirl(t) for t in twirl]
        if self.scenario == "trusting":
            self.channel.send(Party.PROVER1, Party.PROVER2, MessageKind.STATE_TRANSFER, copy_index,
                              sites=self.n_sites)
            return state, frames

        rng = stream(seed, TELEPORT, copy_index)
        bits = []
        for site in range(self.n_sites):
            state, (b1, b2) = teleport_site(state, site, rng)
            frames[site] = teleport_frame(b1, b2).compose(frames[site])
            bits.append([b1, b2])
        self.channel.send(Party.PROVER1, Party.VERIFIER, MessageKind.BELL_OUTCOMES, copy_index, bits=bits)
        return state, frames

    def open(self, seed: int, copy_index: int, uniforms: np.ndarray) -> DelegatedSession:
        self._count()
        state, frames = self._transfer(seed, copy_index)
        return DelegatedSession(self, copy_index, state, frames, uniforms)

    def final_device(self, seed: int, copy_index: int) -> DeviceModel:
        """Retained copy with the Verifier's compensated observables."""
        self._count()
        state, frames = self._transfer(seed, copy_index)
        self._final = (copy_index, state, frames)
        observables = {}
        for site, frame in enumerate(frames):
            table = {}
            for label in LABELS:
                instructed, flip = compensate(label, frame)
                sign = -1.0 if flip else 1.0
                table[label] = BinaryObservable(site, sign * trusted_matrix(instructed), label)
            observables[site] = table
        return DeviceModel(state, observables, name=f"{self.name}[final]")

    def final_session(self, uniforms: np.ndarray) -> DelegatedSession:
        """Session on the retained copy, for the computation stage."""
        if self._final is None:
            raise ProtocolError("No copy has been retained yet")
        copy_index, state, frames = self._final
        return DelegatedSession(self, copy_index, state, list(frames), uniforms)


class DelegationResult(BaseModel):
    """Summary of one delegated run."""

    scenario: str
    preparer: str
    measurer: str
    seed: int
    accepted: bool
    aborted_reason: str | None = None
    report: Test4Report | None = None
    messages: int
    rejections: int
    computation_outcomes: list[int] | None = None
    precision_level: float | None = None
    incorrect_accept_bound: float | None = None
    completeness: float
    soundness: float


def channel_discipline_holds(messages: Sequence[PartyMessage]) -> bool:
    """True when Prover 2 never received a twirl vector."""
    return not any(m.kind == MessageKind.TWIRL_VECTOR and m.receiver == Party.PROVER2 for m in messages)


def _run_computation(backend: DelegatedBackend, graph: ColoredGraph, plan: AdaptivePlan, seed: int) -> list[int]:
    schedule = measurement_stage_schedule(graph, plan)
    uniforms = copy_uniforms(seed, group_count(graph), 1, graph.n)[0]
    session = backend.final_session(uniforms)
    history: list[int] = []
    for stage in schedule:
        label = stage.bases[tuple(history)]
        history.append(1 if label == "I" else session.measure(stage.site, label))
    logger.info("Computation stage outcomes: %s", history)
    return history


def run_delegation(
    graph: ColoredGraph,
    m: int,
    c1: float,
    scenario: str = "trusting",
    preparer: Preparer | None = None,
    measurer: Measurer | None = None,
    seed: int = 0,
    *,
    plan: AdaptivePlan | None = None,
    alpha: float | None = None,
) -> tuple[list[PartyMessage], DelegationResult]:
    """Run Test (4) through the three-party harness.

    A prover that answers out of turn aborts the run: the violation is logged,
    a rejection is appended to the transcript and the result is not accepted.
    When ``plan`` is given and the test passes, the retained copy is measured
    stage by stage following ``plan``.
    """
    settings = protocol_settings()
    alpha = settings.alpha if alpha is None else alpha
    preparer = preparer or HonestPreparer(honest_graph_device(graph))
    measurer = measurer or HonestMeasurer()
    if plan is not None:
        measurement_stage_schedule(graph, plan)
    backend = DelegatedBackend(graph, preparer, measurer, scenario)
    logger.info("Delegation %s: preparer=%s measurer=%s m=%d seed=%d",
                scenario, preparer.name, measurer.name, m, seed)

    common = {
        "scenario": scenario,
        "preparer": preparer.name,
        "measurer": measurer.name,
        "seed": seed,
        "completeness": settings.completeness,
        "soundness": settings.soundness,
    }
    try:
        report = run_test4(None, graph, m, c1, seed, alpha=alpha, backend=backend)
    except PartyViolationError as exc:
        logger.warning("Delegation aborted: %s", exc)
        backend.channel.send(Party.VERIFIER, Party.PROVER2, MessageKind.REJECTION, -1, reason=exc.message)
        messages = backend.channel.messages
        return messages, DelegationResult(
            **common, accepted=False, aborted_reason=exc.message, messages=len(messages),
            rejections=sum(1 for msg in messages if msg.kind == MessageKind.REJECTION),
        )

    outcomes = None
    delta = bound = None
    if report.passed:
        delta = theorem2_outputs(report, alpha=alpha).delta
        bound = incorrect_accept_bound(graph.n, delta, alpha, m)
        if plan is not None:
            outcomes = _run_computation(backend, graph, plan, seed)
    messages = backend.channel.messages
    result = DelegationResult(
        **common,
        accepted=report.passed,
        report=report,
        messages=len(messages),
        rejections=sum(1 for msg in messages if msg.kind == MessageKind.REJECTION),
        computation_outcomes=outcomes,
        precision_level=delta,
        incorrect_accept_bound=bound,
    )
    logger.info("Delegation %s finished: accepted=%s messages=%d", scenario, result.accepted, len(messages))
    return messages, result
