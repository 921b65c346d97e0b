"""Messages between the Verifier and the two provers, and the transcript they form."""

import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field

from src.exceptions import PartyViolationError, ValidationError

logger = logging.getLogger(__name__)

TRANSCRIPT_SCHEMA_VERSION = 1


class Party(str, Enum):
    VERIFIER = "verifier"
    PROVER1 = "prover1"
    PROVER2 = "prover2"


class MessageKind(str, Enum):
    STATE_TRANSFER = "state-transfer"
    INSTRUCTION = "instruction"
    OUTCOME = "outcome"
    TWIRL_VECTOR = "twirl-vector"
    BELL_OUTCOMES = "bell-outcomes"
    REJECTION = "rejection"


# kind -> (allowed senders, allowed receivers)
ROUTES: dict[MessageKind, tuple[frozenset[Party], frozenset[Party]]] = {
    MessageKind.STATE_TRANSFER: (frozenset({Party.PROVER1}), frozenset({Party.PROVER2})),
    MessageKind.INSTRUCTION: (frozenset({Party.VERIFIER}), frozenset({Party.PROVER1, Party.PROVER2})),
    MessageKind.OUTCOME: (frozenset({Party.PROVER2}), frozenset({Party.VERIFIER})),
    MessageKind.TWIRL_VECTOR: (frozenset({Party.VERIFIER}), frozenset({Party.PROVER1})),
    MessageKind.BELL_OUTCOMES: (frozenset({Party.PROVER1}), frozenset({Party.VERIFIER})),
    MessageKind.REJECTION: (frozenset({Party.VERIFIER}), frozenset({Party.PROVER1, Party.PROVER2})),
}


class PartyMessage(BaseModel):
    """One message on the channel; the payload never carries quantum states."""

    schema_version: int = TRANSCRIPT_SCHEMA_VERSION
    seq: int = Field(..., ge=0)
    copy_index: int
    sender: Party
    receiver: Party
    kind: MessageKind
    payload: dict[str, Any] = Field(default_factory=dict)


class Channel:
    """In-process channel that enforces who may say what to whom."""

    def __init__(self) -> None:
        self.messages: list[PartyMessage] = []

    def send(self, sender: Party, receiver: Party, kind: MessageKind, copy_index: int, **payload: Any) -> PartyMessage:
        """Append a message after checking its route.

        Raises:
            PartyViolationError: If ``sender`` may not send ``kind`` to ``receiver``
        """
        senders, receivers = ROUTES[kind]
        if sender not in senders or receiver not in receivers:
            raise PartyViolationError(
                "Message route not allowed",
                details={"kind": kind.value, "sender": sender.value, "receiver": receiver.value},
            )
        message = PartyMessage(seq=len(self.messages), copy_index=copy_index, sender=sender,
                               receiver=receiver, kind=kind, payload=payload)
        self.messages.append(message)
        return message

    def received_by(self, party: Party) -> list[PartyMessage]:
        return [m for m in self.messages if m.receiver == party]


def write_transcript(messages: list[PartyMessage], path: str | Path) -> Path:
    """Write one JSON object per line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        for message in messages:
            handle.write(json.dumps(message.model_dump(mode="json"), sort_keys=True) + "\n")
    logger.info("Wrote %d transcript messages to %s", len(messages), path)
    return path


def read_transcript(path: str | Path) -> list[PartyMessage]:
    """Read a JSON-lines transcript.

    Raises:
        ValidationError: If a line is not a valid message of a known schema version
    """
    messages = []
    with open(path, encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                message = PartyMessage.model_validate_json(line)
            except ValueError as exc:
                raise ValidationError("Malformed transcript line",
                                      details={"line": number, "error": str(exc)}) from exc
            if message.schema_version != TRANSCRIPT_SCHEMA_VERSION:
                raise ValidationError("Unsupported transcript schema version",
                                      details={"line": number, "version": message.schema_version})
            messages.append(message)
    return messages
