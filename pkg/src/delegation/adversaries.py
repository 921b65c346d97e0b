"""Prover strategies. Each sees only what its party holds and what it was sent."""

import logging
from abc import ABC, abstractmethod
from collections.abc import Callable, Sequence

import numpy as np

from src.belltest import DeviceModel
from src.delegation.frames import twirl_unitary
from src.hilbert import BinaryObservable, PureState, apply_local, measure, trusted_matrix

logger = logging.getLogger(__name__)


class Preparer(ABC):
    """Prover 1: prepares copies of the resource state and applies the instructed twirl."""

    name = "preparer"

    def __init__(self, device: DeviceModel):
        self.device = device

    @abstractmethod
    def prepare(self, seed: int, copy_index: int, twirl: Sequence[int]) -> PureState:
        """Return the physical copy handed on towards Prover 2."""


class HonestPreparer(Preparer):
    name = "honest"

    def prepare(self, seed: int, copy_index: int, twirl: Sequence[int]) -> PureState:
        state, _ = self.device.prepare(seed, copy_index)
        for site, t in enumerate(twirl):
            state = apply_local(state, site, twirl_unitary(int(t)))
        return state


class ProductStatePreparer(Preparer):
    """Sends |+>^n instead of the graph state."""

    name = "product-state"

    def prepare(self, seed: int, copy_index: int, twirl: Sequence[int]) -> PureState:
        plus = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
        state = PureState.product_state([plus] * self.device.n_sites)
        for site, t in enumerate(twirl):
            state = apply_local(state, site, twirl_unitary(int(t)))
        return state


class TwirlSkippingPreparer(Preparer):
    """Prepares the right state but never applies the twirl."""

    name = "twirl-skipping"

    def prepare(self, seed: int, copy_index: int, twirl: Sequence[int]) -> PureState:
        state, _ = self.device.prepare(seed, copy_index)
        return state


class Measurer(ABC):
    """Prover 2: measures instructed sites of the copies it holds.

    ``request_twirl`` is the only way a measurer can ask for side information;
    the harness answers it with a rejection.
    """

    name = "measurer"

    def __init__(self) -> None:
        self.request_twirl: Callable[[int], None] = lambda copy_index: None

    @abstractmethod
    def measure(
        self, state: PureState, copy_index: int, site: int, label: str, uniform: float
    ) -> tuple[int, int, PureState]:
        """Measure and return (measured site, outcome, post-measurement state)."""


def _trusted_measure(state: PureState, site: int, label: str, uniform: float) -> tuple[int, PureState]:
    return measure(state, BinaryObservable(site, trusted_matrix(label), label), uniform)


class HonestMeasurer(Measurer):
    name = "honest"

    def measure(self, state, copy_index, site, label, uniform):
        outcome, post = _trusted_measure(state, site, label, uniform)
        return site, outcome, post


class OutOfOrderMeasurer(Measurer):
    """Measures the next site instead of the instructed one."""

    name = "out-of-order"

    def measure(self, state, copy_index, site, label, uniform):
        other = (site + 1) % state.n_sites
        outcome, post = _trusted_measure(state, other, label, uniform)
        return other, outcome, post


class TwirlPeekingMeasurer(Measurer):
    """Asks for the twirl vector before its first measurement of every copy, then measures honestly."""

    name = "twirl-peeking"

    def __init__(self) -> None:
        super().__init__()
        self._asked: set[int] = set()

    def measure(self, state, copy_index, site, label, uniform):
        if copy_index not in self._asked:
            self._asked.add(copy_index)
            self.request_twirl(copy_index)
        outcome, post = _trusted_measure(state, site, label, uniform)
        return site, outcome, post


PREPARERS: dict[str, type[Preparer]] = {
    cls.name: cls for cls in (HonestPreparer, ProductStatePreparer, TwirlSkippingPreparer)
}
MEASURERS: dict[str, type[Measurer]] = {
    cls.name: cls for cls in (HonestMeasurer, OutOfOrderMeasurer, TwirlPeekingMeasurer)
}
