"""Measurement backends: where the copies consumed by the graph-state test come from."""

import threading
from abc import ABC, abstractmethod

import numpy as np

from src.belltest import DeviceModel
from src.hilbert import apply_local, measure
from src.seeding import UniformCursor


class CopySession(ABC):
    """One prepared copy; sites are measured one at a time, at most once each."""

    def __init__(self, copy_index: int):
        self.copy_index = copy_index
        self.outcomes: dict[int, int] = {}

    @abstractmethod
    def measure(self, site: int, label: str) -> int:
        """Measure ``label`` on ``site`` and return the +-1 outcome."""

    @abstractmethod
    def correct_z(self, site: int) -> None:
        """Apply the Z correction on an unmeasured site."""


class MeasurementBackend(ABC):
    """Source of copies of an n-site resource state.

    Implementations count every copy they prepare; the count is what the
    resource-accounting check of the graph-state test reads back.
    """

    def __init__(self, name: str, n_sites: int):
        self.name = name
        self.n_sites = n_sites
        self._prepared = 0
        self._lock = threading.Lock()

    @property
    def prepared(self) -> int:
        return self._prepared

    def _count(self) -> None:
        with self._lock:
            self._prepared += 1

    def require_copies(self, count: int) -> None:
        """Raise InsufficientCopiesError when ``count`` copies cannot be furnished."""

    @abstractmethod
    def open(self, seed: int, copy_index: int, uniforms: np.ndarray) -> CopySession:
        """Prepare copy ``copy_index``; measurements consume ``uniforms`` left to right."""

    @abstractmethod
    def final_device(self, seed: int, copy_index: int) -> DeviceModel:
        """The retained copy as a device model, for exact diagnostics."""


class DeviceSession(CopySession):
    """Copy of a DeviceModel simulated densely."""

    def __init__(self, device: DeviceModel, seed: int, copy_index: int, uniforms: np.ndarray):
        super().__init__(copy_index)
        self.device = device
        self.state, self._rng = device.prepare(seed, copy_index)
        self._cursor = UniformCursor(uniforms)

    def measure(self, site: int, label: str) -> int:
        obs = self.device.observable(site, label, self._rng)
        outcome, post = measure(self.state, obs, self._cursor.next())
        self.state = post
        self.outcomes[site] = outcome
        return outcome

    def correct_z(self, site: int) -> None:
        self.state = apply_local(self.state, site, self.device.observable(site, "Z").matrix)


class DeviceBackend(MeasurementBackend):
    """Direct access to a device model."""

    def __init__(self, device: DeviceModel):
        super().__init__(device.name, device.n_sites)
        self.device = device

    def require_copies(self, count: int) -> None:
        self.device.require_copies(count)

    def open(self, seed: int, copy_index: int, uniforms: np.ndarray) -> DeviceSession:
        self._count()
        return DeviceSession(self.device, seed, copy_index, uniforms)

    def final_device(self, seed: int, copy_index: int) -> DeviceModel:
        self._count()
        state, _ = self.device.prepare(seed, copy_index)
        return DeviceModel(state, self.device.observables, name=f"{self.device.name}[final]")
