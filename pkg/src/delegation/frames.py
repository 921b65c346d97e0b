"""Discrete twirls and the Pauli frame the Verifier keeps for every transferred qubit.

Setting index a stands for the XZ-plane observable at Bloch angle a*pi/4
(0 = Z, 1 = A0, 2 = X, 3 = A1; a + 4 is the negated observable). A frame
records how the physical qubit relates to the logical one: measuring logical
setting a means measuring physical setting ``frame(a)``.
"""

import math
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from src.exceptions import ValidationError
from src.hilbert import (
    PAULI_Z,
    SETTINGS,
    BinaryObservable,
    PureState,
    apply_local,
    joint_distribution,
    rotation_y,
    trusted_matrix,
)

TWIRL_VALUES = 8


def twirl_unitary(t: int) -> np.ndarray:
    """U(T): real rotation with entries cos(pi T / 8), -+sin(pi T / 8)."""
    if not 0 <= t < TWIRL_VALUES:
        raise ValidationError("Twirl index must lie in 0..7", details={"T": t})
    return rotation_y(math.pi * t / 4.0)


@dataclass(frozen=True)
class Frame:
    """Map a -> rotation + (-1)^reflection * a (mod 8) on setting indices."""

    rotation: int = 0
    reflection: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotation", self.rotation % TWIRL_VALUES)
        object.__setattr__(self, "reflection", self.reflection % 2)

    def __call__(self, setting: int) -> int:
        sign = -1 if self.reflection else 1
        return (self.rotation + sign * setting) % TWIRL_VALUES

    def compose(self, inner: "Frame") -> "Frame":
        """The frame of ``self`` applied after ``inner``."""
        sign = -1 if self.reflection else 1
        return Frame(self.rotation + sign * inner.rotation, self.reflection ^ inner.reflection)

    def unitary(self) -> np.ndarray:
        """R(rotation * pi / 4) Z^reflection, the qubit operation this frame tracks."""
        base = PAULI_Z if self.reflection else np.eye(2, dtype=complex)
        return rotation_y(math.pi * self.rotation / 4.0) @ base

    @classmethod
    def twirl(cls, t: int) -> "Frame":
        return cls(t, 0)


IDENTITY_FRAME = Frame(0, 0)
Z_FRAME = Frame(0, 1)
X_FRAME = Frame(4, 1)


def teleport_frame(b1: int, b2: int) -> Frame:
    """Frame of the teleportation by-product X^b2 Z^b1."""
    frame = IDENTITY_FRAME
    if b1:
        frame = Z_FRAME.compose(frame)
    if b2:
        frame = X_FRAME.compose(frame)
    return frame


def setting_index(label: str) -> int:
    try:
        return SETTINGS.index(label)
    except ValueError as exc:
        raise ValidationError("Not a measurement setting", details={"label": label}) from exc


def compensate(label: str, frame: Frame) -> tuple[str, bool]:
    """Physical setting to instruct for logical ``label`` and whether to flip the reported outcome."""
    physical = frame(setting_index(label))
    return SETTINGS[physical % 4], physical >= 4


def compensated_distribution(
    state: PureState, measurements: Mapping[int, str], frames: Mapping[int, Frame]
) -> np.ndarray:
    """Joint outcome distribution seen by the Verifier after the provers act on a framed copy.

    The copy is moved into its physical frame, each site is measured in the
    compensated setting and flipped outcomes are folded back, so for honest
    parties the result equals the direct distribution of ``measurements``.
    """
    physical = state
    for site, frame in frames.items():
        physical = apply_local(physical, site, frame.unitary())
    observables = []
    for site, label in measurements.items():
        instructed, flip = compensate(label, frames.get(site, IDENTITY_FRAME))
        sign = -1.0 if flip else 1.0
        observables.append(BinaryObservable(site, sign * trusted_matrix(instructed), label))
    return joint_distribution(physical, observables)


def masking_distribution(t: int) -> dict[int, Fraction]:
    """Exact distribution of (T + T') mod 8 for a uniform T' and fixed T."""
    if not 0 <= t < TWIRL_VALUES:
        raise ValidationError("Twirl index must lie in 0..7", details={"T": t})
    counts: dict[int, Fraction] = {}
    for t_prime in range(TWIRL_VALUES):
        value = (t + t_prime) % TWIRL_VALUES
        counts[value] = counts.get(value, Fraction(0)) + Fraction(1, TWIRL_VALUES)
    return counts
