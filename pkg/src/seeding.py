"""Seeded random streams shared by every protocol module.

A master seed is split into independent streams with
``numpy.random.SeedSequence(seed, spawn_key=(stage, *indices))``. The stage
constants and the index layout below are part of the reproducibility
contract: changing them changes every report.
"""

import numpy as np

from src.exceptions import ValidationError

PERMUTATION = 0
MEASUREMENT = 1
NOISE = 2
TWIRL = 3
TELEPORT = 4


def stream(seed: int, stage: int, *indices: int) -> np.random.Generator:
    """Return the generator for one (stage, indices) key of a master seed."""
    if seed < 0:
        raise ValidationError("Seed must be non-negative", details={"seed": seed})
    key = (int(stage), *(int(i) for i in indices))
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=key))


def permutation(seed: int, size: int, *indices: int) -> np.ndarray:
    """Seeded permutation of ``range(size)`` used for random group assignment."""
    return stream(seed, PERMUTATION, *indices).permutation(size)


def copy_uniforms(seed: int, group: int, copies: int, draws: int) -> np.ndarray:
    """Uniform draws for the copies of one group, shape ``(copies, draws)``.

    Row j belongs to the j-th copy of the group; measurements on that copy
    consume the row left to right.
    """
    return stream(seed, MEASUREMENT, group).random((copies, draws))


def noise_stream(seed: int, copy_index: int) -> np.random.Generator:
    """Stream handed to per-copy device noise hooks."""
    return stream(seed, NOISE, copy_index)


class UniformCursor:
    """Consumes one row of pre-drawn uniforms in order."""

    def __init__(self, row: np.ndarray):
        self._row = row
        self._position = 0

    def next(self) -> float:
        """Return the next uniform of the row."""
        if self._position >= len(self._row):
            raise IndexError("uniform row exhausted")
        value = float(self._row[self._position])
        self._position += 1
        return value

    @property
    def consumed(self) -> int:
        """Number of uniforms drawn so far."""
        return self._position
