"""Color protocols: reduce a graph-state copy to one Bell pair per tested site."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from src.belltest import GROUP_SETTINGS, DeviceModel
from src.graphs import ColoredGraph, choose_partners
from src.graphtest.backend import CopySession, DeviceBackend, MeasurementBackend
from src.hilbert import PureState
from src.seeding import copy_uniforms

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReducedCopy:
    """Post-reduction copy: the collapsed state, the Z outcomes and the pairs left standing."""

    copy_index: int
    state: PureState
    pairs: dict[int, int]
    z_outcomes: dict[int, int]


def _measure_z(session: CopySession, graph: ColoredGraph, sites: Sequence[int]) -> None:
    for v in sites:
        if session.measure(v, "Z") == -1:
            for u in sorted(graph.neighbours(v)):
                if u not in session.outcomes:
                    session.correct_z(u)
    logger.debug("Copy %d: measured Z on %s", session.copy_index, list(sites))


def reduce_session(
    session: CopySession,
    graph: ColoredGraph,
    color: int,
    subset: Sequence[int],
    partners: dict[int, int],
) -> None:
    """Measure Z' everywhere except the subset and its partners, correcting as outcomes arrive.

    Same-color sites outside the subset go first, then every other-color site
    that is not a partner. A -1 outcome on v applies Z' to every unmeasured
    neighbour of v.
    """
    keep = set(subset) | set(partners.values())
    same_color = [v for v in graph.color_class(color) if v not in keep]
    others = [v for v in range(graph.n) if graph.coloring[v] != color and v not in keep]
    _measure_z(session, graph, same_color)
    _measure_z(session, graph, others)


def measure_pairs(session: CopySession, partners: dict[int, int], setting: int) -> dict[int, int]:
    """Measure group ``setting`` on every (i, j_i) pair and return the outcome products per i."""
    first, second = GROUP_SETTINGS[setting]
    return {i: session.measure(i, first) * session.measure(j, second) for i, j in partners.items()}


def run_color_protocol(
    device: DeviceModel,
    graph: ColoredGraph,
    subset: Sequence[int],
    m: int,
    seed: int,
    color: int | None = None,
) -> list[ReducedCopy]:
    """Prepare 8m copies of ``device`` and reduce each to Bell pairs on ``subset``.

    Raises:
        ProtocolError: If the subset violates the non-conflict condition or a
            site has no admissible partner
        InsufficientCopiesError: If the device cannot furnish 8m copies
    """
    subset = tuple(sorted(subset))
    color = graph.coloring[subset[0]] if color is None else color
    partners = choose_partners(graph, subset)
    copies = 8 * m
    device.require_copies(copies)
    backend = DeviceBackend(device)
    uniforms = copy_uniforms(seed, 0, copies, graph.n)
    reduced = []
    for copy_index in range(copies):
        session = backend.open(seed, copy_index, uniforms[copy_index])
        reduce_session(session, graph, color, subset, partners)
        reduced.append(ReducedCopy(copy_index, session.state, dict(partners), dict(session.outcomes)))
    logger.info("Color protocol on %s: subset %s partners %s copies %d",
                device.name, subset, partners, copies)
    return reduced


def run_subset_groups(
    backend: MeasurementBackend,
    graph: ColoredGraph,
    color: int,
    subset: Sequence[int],
    group_copies: Sequence[Sequence[int]],
    first_group: int,
    seed: int,
) -> tuple[dict[int, int], dict[int, list[np.ndarray]]]:
    """Run the eight Bell-test groups of one subset.

    Returns the partner map and, per tested site, the eight arrays of outcome
    products in GROUP_SETTINGS order.
    """
    partners = choose_partners(graph, subset)
    products: dict[int, list[np.ndarray]] = {i: [] for i in partners}
    for setting, copies in enumerate(group_copies):
        group = first_group + setting
        uniforms = copy_uniforms(seed, group, len(copies), graph.n)
        rows = {i: np.empty(len(copies), dtype=np.int64) for i in partners}
        for row, copy_index in enumerate(copies):
            session = backend.open(seed, int(copy_index), uniforms[row])
            reduce_session(session, graph, color, subset, partners)
            for i, product in measure_pairs(session, partners, setting).items():
                rows[i][row] = product
        for i in partners:
            products[i].append(rows[i])
    return partners, products
