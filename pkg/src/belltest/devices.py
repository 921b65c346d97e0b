"""Untrusted device models: a prepared state plus per-site binary observables."""

import logging
import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, replace

import numpy as np

from src.exceptions import InsufficientCopiesError, ValidationError
from src.graphs import ColoredGraph
from src.hilbert import (
    BinaryObservable,
    apply_local,
    PureState,
    embed,
    make_graph_state,
    rotation_y,
    trusted_matrix,
)
from src.seeding import noise_stream

logger = logging.getLogger(__name__)

LABELS = ("X", "Z", "A0", "A1")

StateHook = Callable[[PureState, np.random.Generator], PureState]
ObservableHook = Callable[[BinaryObservable, np.random.Generator], BinaryObservable]


@dataclass(frozen=True, eq=False)
class DeviceModel:
    """An untrusted preparation and the untrusted observables measured on it.

    ``observables[site][label]`` holds X', Z', A(0)' and A(1)' for each site;
    A(i)' are independent devices, not derived from X' and Z'. The optional
    hooks perturb each prepared copy and each measurement, drawing from the
    copy's noise stream.
    """

    state: PureState
    observables: Mapping[int, Mapping[str, BinaryObservable]]
    name: str = "device"
    state_hook: StateHook | None = None
    observable_hook: ObservableHook | None = None
    max_copies: int | None = None

    def __post_init__(self) -> None:
        for site, table in self.observables.items():
            if not 0 <= site < self.state.n_sites:
                raise ValidationError("Observable site outside the state", details={"site": site})
            for label, obs in table.items():
                if obs.site != site or obs.dim != self.state.dims[site]:
                    raise ValidationError(
                        "Observable does not fit its site",
                        details={"site": site, "label": label, "dim": obs.dim},
                    )

    @property
    def dims(self) -> tuple[int, ...]:
        return self.state.dims

    @property
    def n_sites(self) -> int:
        return self.state.n_sites

    @property
    def has_hooks(self) -> bool:
        return self.state_hook is not None or self.observable_hook is not None

    def observable(self, site: int, label: str, rng: np.random.Generator | None = None) -> BinaryObservable:
        """Observable ``label`` of ``site``, perturbed by the hook when a stream is given."""
        try:
            obs = self.observables[site][label]
        except KeyError as exc:
            raise ValidationError(
                "Device has no such observable", details={"site": site, "label": label}
            ) from exc
        if rng is not None and self.observable_hook is not None:
            obs = self.observable_hook(obs, rng)
        return obs

    def require_copies(self, count: int) -> None:
        """Fail fast when the device cannot furnish ``count`` copies."""
        if self.max_copies is not None and count > self.max_copies:
            raise InsufficientCopiesError(
                "Device cannot furnish the requested copies",
                details={"requested": count, "available": self.max_copies, "device": self.name},
            )

    def prepare(self, seed: int, copy_index: int) -> tuple[PureState, np.random.Generator]:
        """Prepare one copy; returns the state and the copy's noise stream."""
        rng = noise_stream(seed, copy_index)
        state = self.state if self.state_hook is None else self.state_hook(self.state, rng)
        return state, rng

    def with_observable(self, site: int, label: str, matrix: np.ndarray) -> "DeviceModel":
        """Copy with one observable replaced."""
        table = {s: dict(t) for s, t in self.observables.items()}
        table.setdefault(site, {})[label] = BinaryObservable(site, matrix, f"{label}'")
        return replace(self, observables=table)


def trusted_observables(dims: tuple[int, ...], sites=None) -> dict[int, dict[str, BinaryObservable]]:
    """Ideal X, Z, A(0), A(1) on every qubit site (embedded with +1 fill on larger sites)."""
    sites = range(len(dims)) if sites is None else sites
    return {
        site: {
            label: BinaryObservable(site, embed(trusted_matrix(label), dims[site]), label)
            for label in LABELS
        }
        for site in sites
    }


def device_from_state(
    state: PureState, name: str = "device", observables=None, **hooks
) -> DeviceModel:
    """Device measuring ``state`` with trusted observables unless others are given."""
    return DeviceModel(state, observables or trusted_observables(state.dims), name=name, **hooks)


def bell_pair_graph() -> ColoredGraph:
    return ColoredGraph(2, ((0, 1),), (0, 1), {0: ((0,),), 1: ((1,),)}, name="edge")


def honest_bell_device() -> DeviceModel:
    """(|0,+> + |1,->)/sqrt(2) with ideal observables."""
    return device_from_state(make_graph_state(bell_pair_graph()), name="honest")


def honest_graph_device(graph: ColoredGraph) -> DeviceModel:
    """Graph state of ``graph`` with ideal observables on every site."""
    return device_from_state(make_graph_state(graph), name=f"honest-{graph.name or graph.n}")


def product_state_device() -> DeviceModel:
    """|0>|0> with ideal observables; fails the deterministic checks."""
    return device_from_state(PureState.basis_state((2, 2), (0, 0)), name="product")


def rotated_device(base: DeviceModel, site: int, label: str, theta: float) -> DeviceModel:
    """Copy of ``base`` whose observable ``label`` on ``site`` is turned by ``theta`` in the XZ plane.

    The rotation acts on the first two levels of the site.
    """
    obs = base.observable(site, label)
    rotation = embed(rotation_y(theta), obs.dim)
    device = base.with_observable(site, label, rotation @ obs.matrix @ rotation.conj().T)
    return replace(device, name=f"{base.name}+rot({label}{site},{theta:.4g})")


def rotated_state_device(base: DeviceModel, site: int, theta: float) -> DeviceModel:
    """Copy of ``base`` whose state has a local XZ-plane rotation applied on ``site``."""
    rotation = embed(rotation_y(theta), base.dims[site])
    return replace(base, state=apply_local(base.state, site, rotation),
                   name=f"{base.name}+srot({site},{theta:.4g})")


def depolarized_device(p: float) -> DeviceModel:
    """Bell pair mixed with white noise, purified with a local three-level register per site.

    Each site is qubit (x) {g, 0, 1}; the reduced qubit state is (1-p) Phi + p I/4
    and the observables act as O (x) I on the register.
    """
    if not 0.0 <= p <= 1.0:
        raise ValidationError("Depolarizing weight must lie in [0, 1]", details={"p": p})
    bell = make_graph_state(bell_pair_graph()).as_tensor()
    amps = np.zeros((2, 3, 2, 3), dtype=complex)
    amps[:, 0, :, 0] = math.sqrt(1.0 - p) * bell
    for a in range(2):
        for b in range(2):
            amps[a, 1 + a, b, 1 + b] = math.sqrt(p) / 2.0
    state = PureState.from_amplitudes((6, 6), amps, normalize=True)
    register = np.eye(3)
    observables = {
        site: {
            label: BinaryObservable(site, np.kron(trusted_matrix(label), register), label)
            for label in LABELS
        }
        for site in (0, 1)
    }
    return DeviceModel(state, observables, name=f"depolarized({p:.4g})")


def qutrit_device(leak: float = 0.0, theta: float = 0.0) -> DeviceModel:
    """Bell pair whose second site is three-dimensional.

    ``leak`` moves weight into |1>|2>; ``theta`` turns X' on the large site
    within its qubit block. The extra level carries eigenvalue +1 for every
    observable.
    """
    if not 0.0 <= leak < 1.0:
        raise ValidationError("Leak weight must lie in [0, 1)", details={"leak": leak})
    bell = make_graph_state(bell_pair_graph()).as_tensor()
    amps = np.zeros((2, 3), dtype=complex)
    amps[:, :2] = math.sqrt(1.0 - leak) * bell
    amps[1, 2] = math.sqrt(leak)
    state = PureState.from_amplitudes((2, 3), amps, normalize=True)
    device = device_from_state(state, name=f"qutrit({leak:.4g})")
    if theta:
        device = rotated_device(device, 1, "X", theta)
    return device


def random_rotation_noise(sigma: float) -> ObservableHook:
    """Observable hook turning each measured qubit observable by N(0, sigma^2) radians."""

    def hook(obs: BinaryObservable, rng: np.random.Generator) -> BinaryObservable:
        rotation = embed(rotation_y(float(rng.normal(0.0, sigma))), obs.dim)
        return BinaryObservable(obs.site, rotation @ obs.matrix @ rotation.T, obs.label)

    return hook
