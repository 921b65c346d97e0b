"""Tests for the three-party delegation harness."""

import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from src.belltest import honest_bell_device, honest_graph_device, qutrit_device
from src.certify import AdaptivePlan, StepRule
from src.delegation import (
    IDENTITY_FRAME,
    MEASURERS,
    PREPARERS,
    TWIRL_VALUES,
    X_FRAME,
    Z_FRAME,
    Channel,
    DelegatedBackend,
    Frame,
    HonestMeasurer,
    HonestPreparer,
    MessageKind,
    OutOfOrderMeasurer,
    Party,
    ProductStatePreparer,
    TwirlPeekingMeasurer,
    TwirlSkippingPreparer,
    channel_discipline_holds,
    compensate,
    compensated_distribution,
    load_scenario,
    masking_distribution,
    measurement_stage_schedule,
    read_transcript,
    run_delegation,
    teleport_frame,
    teleport_site,
    twirl_unitary,
    write_transcript,
)
from src.exceptions import PartyViolationError, ProtocolError, ValidationError
from src.hilbert import PAULI_X, PAULI_Z, SETTINGS, BinaryObservable, apply_local, joint_distribution, trusted_matrix

SCENARIO_DIR = Path(__file__).resolve().parents[1] / "data" / "scenarios"

# c1 / sqrt(m) above 2 makes every CHSH check pass regardless of sampling
SAFE_C1 = 10.0


def _same_up_to_phase(a, b):
    return abs(abs(np.trace(a.conj().T @ b)) - a.shape[0]) < 1e-12


class TestFrames:
    """Test suite for twirls and Pauli frames."""

    def test_frame_normalizes(self):
        """Test rotation is taken mod 8 and reflection mod 2."""
        assert Frame(9, 3) == Frame(1, 1)

    def test_frame_action(self):
        """Test a -> r + (-1)^f a mod 8."""
        assert Frame(2, 0)(3) == 5
        assert Frame(2, 1)(3) == 7
        assert Z_FRAME(2) == 6

    def test_twirl_unitary_range(self):
        """Test twirl indices outside 0..7 are refused."""
        with pytest.raises(ValidationError):
            twirl_unitary(TWIRL_VALUES)

    @pytest.mark.parametrize("t", range(TWIRL_VALUES))
    def test_twirl_moves_settings(self, t):
        """Test U(T) O(a) U(T)^dagger = O(a + T) for every setting."""
        u = twirl_unitary(t)
        for label in SETTINGS:
            physical, flip = compensate(label, Frame.twirl(t))
            sign = -1.0 if flip else 1.0
            assert np.allclose(u @ trusted_matrix(label) @ u.conj().T, sign * trusted_matrix(physical), atol=1e-12)

    def test_pauli_frames_match_operators(self):
        """Test the Z and X frames track Z and X up to phase."""
        assert _same_up_to_phase(Z_FRAME.unitary(), PAULI_Z)
        assert _same_up_to_phase(X_FRAME.unitary(), PAULI_X)

    @pytest.mark.parametrize("b1,b2", [(0, 0), (1, 0), (0, 1), (1, 1)])
    def test_teleport_frame(self, b1, b2):
        """Test the by-product frame is X^b2 Z^b1."""
        expected = np.linalg.matrix_power(PAULI_X, b2) @ np.linalg.matrix_power(PAULI_Z, b1)

        assert _same_up_to_phase(teleport_frame(b1, b2).unitary(), expected)

    def test_teleport_frame_trivial(self):
        """Test no by-product leaves the identity frame."""
        assert teleport_frame(0, 0) == IDENTITY_FRAME

    def test_compensate_examples(self):
        """Test the instructed setting and flip for a few frames."""
        assert compensate("Z", IDENTITY_FRAME) == ("Z", False)
        assert compensate("X", Frame.twirl(2)) == ("Z", True)
        assert compensate("A0", Z_FRAME) == ("A1", True)

    def test_compensate_unknown_label(self):
        """Test only the four settings can be compensated."""
        with pytest.raises(ValidationError):
            compensate("Y", IDENTITY_FRAME)

    @pytest.mark.parametrize("t", range(TWIRL_VALUES))
    @pytest.mark.parametrize("reflection", [0, 1])
    def test_compensation_exact(self, t, reflection):
        """Test the Verifier's view of a framed copy equals the unframed distribution."""
        state = honest_bell_device().state
        frame = Frame(t, reflection)
        for label in SETTINGS:
            measurements = {0: label, 1: "X"}
            direct = joint_distribution(
                state, [BinaryObservable(0, trusted_matrix(label), label), BinaryObservable(1, PAULI_X, "X")]
            )

            framed = compensated_distribution(state, measurements, {0: frame})

            assert np.allclose(framed, direct, atol=1e-12)

    @pytest.mark.parametrize("t", range(TWIRL_VALUES))
    def test_masking_is_uniform(self, t):
        """Test a uniform extra twirl hides T completely."""
        distribution = masking_distribution(t)

        assert distribution == {v: Fraction(1, TWIRL_VALUES) for v in range(TWIRL_VALUES)}


class TestTeleport:
    """Test suite for dense teleportation."""

    @pytest.mark.parametrize("seed", range(6))
    def test_by_product_correction(self, seed):
        """Test undoing X^b2 Z^b1 recovers the original state."""
        original = honest_bell_device().state
        rng = np.random.default_rng(seed)

        received, (b1, b2) = teleport_site(original, 0, rng)
        corrected = received
        if b2:
            corrected = apply_local(corrected, 0, PAULI_X)
        if b1:
            corrected = apply_local(corrected, 0, PAULI_Z)

        assert corrected.dims == original.dims
        assert corrected.fidelity(original) == pytest.approx(1.0, abs=1e-12)

    def test_qutrit_site_refused(self):
        """Test only qubits can be teleported."""
        with pytest.raises(ValidationError):
            teleport_site(qutrit_device(leak=0.1).state, 1, np.random.default_rng(0))


class TestChannel:
    """Test suite for message routing and transcripts."""

    def test_route_enforced(self):
        """Test Prover 2 cannot be sent a twirl vector."""
        channel = Channel()

        with pytest.raises(PartyViolationError):
            channel.send(Party.VERIFIER, Party.PROVER2, MessageKind.TWIRL_VECTOR, 0, twirl=[0])
        assert channel.messages == []

    def test_sequence_numbers(self):
        """Test messages are numbered in send order."""
        channel = Channel()
        channel.send(Party.VERIFIER, Party.PROVER1, MessageKind.TWIRL_VECTOR, 0, twirl=[1, 2])
        channel.send(Party.PROVER1, Party.PROVER2, MessageKind.STATE_TRANSFER, 0, sites=2)

        assert [m.seq for m in channel.messages] == [0, 1]
        assert [m.kind for m in channel.received_by(Party.PROVER2)] == [MessageKind.STATE_TRANSFER]

    def test_transcript_round_trip(self, tmp_path, path3):
        """Test a written transcript reads back message for message."""
        messages, _ = run_delegation(path3, 1, SAFE_C1, seed=2)

        path = write_transcript(messages, tmp_path / "run" / "transcript.jsonl")

        assert read_transcript(path) == messages

    def test_malformed_transcript(self, tmp_path):
        """Test a broken line is reported with its number."""
        path = tmp_path / "bad.jsonl"
        path.write_text('{"seq": 0}\n', encoding="utf-8")

        with pytest.raises(ValidationError) as exc_info:
            read_transcript(path)

        assert exc_info.value.details["line"] == 1


class TestSchedule:
    """Test suite for computation-stage schedules."""

    def test_fixed_order_schedule(self, path3):
        """Test one stage per site with its bases by history."""
        plan = AdaptivePlan((2, 0, 1), (StepRule("X"), StepRule("Z", {(-1,): "A0"}), StepRule("Z")))

        schedule = measurement_stage_schedule(path3, plan)

        assert [s.site for s in schedule] == [2, 0, 1]
        assert schedule[1].bases == {(1,): "Z", (-1,): "A0"}

    def test_outcome_dependent_order(self, path3):
        """Test a site order that depends on outcomes is refused."""

        def order_rule(stage, history):
            if stage == 0:
                return 0
            if stage == 1:
                return 1 if history == (1,) else 2
            return 2 if history[0] == 1 else 1

        plan = AdaptivePlan((0, 1, 2), tuple(StepRule("X") for _ in range(3)), order_rule=order_rule)

        with pytest.raises(ProtocolError):
            measurement_stage_schedule(path3, plan)

    def test_site_count_mismatch(self, path3):
        """Test the plan must cover every site."""
        with pytest.raises(ValidationError):
            measurement_stage_schedule(path3, AdaptivePlan.fixed(["X", "Z"]))


class TestBackend:
    """Test suite for the delegated measurement backend."""

    def test_unknown_scenario(self, path3):
        """Test only trusting and teleport scenarios exist."""
        with pytest.raises(ValidationError):
            DelegatedBackend(path3, HonestPreparer(honest_graph_device(path3)), HonestMeasurer(), "courier")

    def test_final_session_needs_retained_copy(self, path3):
        """Test the computation stage cannot start before a copy is retained."""
        backend = DelegatedBackend(path3, HonestPreparer(honest_graph_device(path3)), HonestMeasurer())

        with pytest.raises(ProtocolError):
            backend.final_session(np.array([0.5, 0.5, 0.5]))

    @pytest.mark.parametrize("scenario", ["trusting", "teleport"])
    def test_honest_copy_passes_stabilizers(self, path3, scenario):
        """Test compensated stabilizer measurements on a framed copy pass."""
        backend = DelegatedBackend(path3, HonestPreparer(honest_graph_device(path3)), HonestMeasurer(), scenario)
        for copy_index in range(5):
            session = backend.open(3, copy_index, np.full(3, 0.5))
            outcomes = {v: session.measure(v, label) for v, label in enumerate(["Z", "X", "Z"])}
            assert outcomes[0] * outcomes[1] * outcomes[2] == 1

    def test_twirl_only_reaches_prover1(self, path3):
        """Test twirl vectors are only ever sent to Prover 1."""
        backend = DelegatedBackend(path3, HonestPreparer(honest_graph_device(path3)), HonestMeasurer(), "teleport")
        backend.open(0, 0, np.full(3, 0.5))

        kinds = {(m.kind, m.receiver) for m in backend.channel.messages}
        assert (MessageKind.TWIRL_VECTOR, Party.PROVER1) in kinds
        assert (MessageKind.BELL_OUTCOMES, Party.VERIFIER) in kinds
        assert channel_discipline_holds(backend.channel.messages)


class TestRunDelegation:
    """Test suite for complete delegated runs."""

    def test_honest_trusting_accepted(self, path3):
        """Test honest parties are accepted and the computation stage runs."""
        plan = AdaptivePlan.fixed(["Z", "X", "Z"])

        messages, result = run_delegation(path3, 2, SAFE_C1, "trusting", seed=11, plan=plan)

        assert result.accepted
        assert result.rejections == 0
        assert result.report.copies_consumed == 26 * 2 + 1
        assert len(result.computation_outcomes) == 3
        assert np.prod(result.computation_outcomes) == 1
        assert result.precision_level is not None
        assert channel_discipline_holds(messages)

    def test_honest_teleport_accepted(self, triangle):
        """Test teleported honest copies pass."""
        messages, result = run_delegation(triangle, 2, SAFE_C1, "teleport", seed=5)

        assert result.accepted
        assert any(m.kind == MessageKind.BELL_OUTCOMES for m in messages)
        assert result.messages == len(messages)

    def test_identity_stage_reports_plus_one(self, path3):
        """Test an "I" stage yields +1 without contacting Prover 2."""
        plan = AdaptivePlan.fixed(["I", "I", "I"])

        _, result = run_delegation(path3, 1, SAFE_C1, seed=4, plan=plan)

        assert result.computation_outcomes == [1, 1, 1]

    def test_out_of_order_aborts(self, path3):
        """Test a measurer answering for the wrong site aborts with a rejection."""
        messages, result = run_delegation(path3, 2, SAFE_C1, measurer=OutOfOrderMeasurer(), seed=3)

        assert not result.accepted
        assert result.report is None
        assert result.aborted_reason
        assert messages[-1].kind == MessageKind.REJECTION
        assert messages[-1].copy_index == -1

    def test_twirl_peeking_refused_but_accepted(self, path3):
        """Test a twirl request is refused with a rejection and the run continues."""
        messages, result = run_delegation(path3, 2, SAFE_C1, measurer=TwirlPeekingMeasurer(), seed=8)

        assert result.accepted
        assert result.rejections == 26 * 2
        assert channel_discipline_holds(messages)

    @pytest.mark.parametrize("scenario", ["trusting", "teleport"])
    def test_twirl_skipping_rejected(self, path3, scenario):
        """Test a preparer that skips the twirl fails the test."""
        preparer = TwirlSkippingPreparer(honest_graph_device(path3))

        _, result = run_delegation(path3, 5, SAFE_C1, scenario, preparer=preparer, seed=13)

        assert not result.accepted
        assert result.aborted_reason is None

    def test_product_state_rejected(self, path3):
        """Test a product-state preparer fails the test."""
        preparer = ProductStatePreparer(honest_graph_device(path3))

        _, result = run_delegation(path3, 5, SAFE_C1, preparer=preparer, seed=13)

        assert not result.accepted

    def test_reproducible(self, triangle):
        """Test the same seed gives the same transcript."""
        first, _ = run_delegation(triangle, 1, SAFE_C1, "teleport", seed=6)
        second, _ = run_delegation(triangle, 1, SAFE_C1, "teleport", seed=6)

        assert [m.model_dump() for m in first] == [m.model_dump() for m in second]


class TestScenarioFiles:
    """Test suite for scenario files."""

    @pytest.mark.parametrize("path", sorted(SCENARIO_DIR.glob("*.json")), ids=lambda p: p.stem)
    def test_bundled_scenarios_load(self, path):
        """Test every bundled scenario validates and points at an existing graph."""
        config = load_scenario(path)

        assert config.preparer in PREPARERS
        assert config.measurer in MEASURERS
        assert config.graph_path(path.parent).exists()

    def test_bundled_plan_parses(self):
        """Test the adaptive plan of the trusting scenario is a valid plan."""
        config = load_scenario(SCENARIO_DIR / "trusting_honest.json")

        plan = AdaptivePlan.from_dict(config.plan)

        assert plan.is_adaptive()
        assert plan.basis(1, (-1,)) == "A1"

    def test_unknown_party(self, tmp_path):
        """Test an unknown measurer is refused."""
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps({"graph": "g.json", "m": 2, "measurer": "oracle"}), encoding="utf-8")

        with pytest.raises(ValidationError):
            load_scenario(path)

    def test_not_json(self, tmp_path):
        """Test a file that is not JSON is refused."""
        path = tmp_path / "scenario.json"
        path.write_text("m: 2", encoding="utf-8")

        with pytest.raises(ValidationError):
            load_scenario(path)
