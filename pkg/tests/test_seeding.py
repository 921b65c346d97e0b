"""Tests for the seeded stream contract."""

import numpy as np
import pytest

from src.exceptions import ValidationError
from src.seeding import (
    MEASUREMENT,
    NOISE,
    PERMUTATION,
    TWIRL,
    UniformCursor,
    copy_uniforms,
    noise_stream,
    permutation,
    stream,
)


class TestStreams:
    """Test suite for seeded streams."""

    def test_same_key_same_draws(self):
        """Test a key always yields the same numbers."""
        assert np.array_equal(stream(7, TWIRL, 3).random(5), stream(7, TWIRL, 3).random(5))

    def test_stages_are_independent(self):
        """Test different stages give different draws."""
        assert not np.array_equal(stream(7, PERMUTATION).random(5), stream(7, MEASUREMENT).random(5))

    def test_permutation_is_permutation(self):
        """Test the group assignment is a permutation of the copies."""
        order = permutation(3, 50)
        assert sorted(order.tolist()) == list(range(50))

    def test_copy_uniforms_shape(self):
        """Test one row per copy and one column per draw."""
        uniforms = copy_uniforms(1, 2, 10, 3)
        assert uniforms.shape == (10, 3)
        assert np.all((uniforms >= 0) & (uniforms < 1))

    def test_noise_stream_key(self):
        """Test the noise stream is keyed by copy index."""
        assert np.array_equal(noise_stream(5, 4).random(3), stream(5, NOISE, 4).random(3))

    def test_negative_seed(self):
        """Test a negative master seed is refused with the seed in the details."""
        with pytest.raises(ValidationError) as exc_info:
            stream(-1, PERMUTATION)

        assert exc_info.value.details == {"seed": -1}


class TestUniformCursor:
    """Test suite for UniformCursor."""

    def test_consumes_in_order(self):
        """Test values come back in row order."""
        cursor = UniformCursor(np.array([0.1, 0.2]))
        assert cursor.next() == 0.1
        assert cursor.next() == 0.2
        assert cursor.consumed == 2

    def test_exhausted(self):
        """Test reading past the row raises IndexError."""
        cursor = UniformCursor(np.array([0.5]))
        cursor.next()
        with pytest.raises(IndexError):
            cursor.next()
