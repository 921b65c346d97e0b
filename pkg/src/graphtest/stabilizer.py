"""Stabilizer tests: X' on one color, Z' elsewhere, parity prediction per site."""

import logging
from collections.abc import Sequence

import numpy as np

from src.belltest import DeviceModel
from src.graphs import ColoredGraph
from src.graphtest.backend import CopySession, DeviceBackend, MeasurementBackend
from src.graphtest.models import StabilizerVerdict
from src.hilbert import joint_distribution
from src.seeding import copy_uniforms

logger = logging.getLogger(__name__)


def measurement_labels(graph: ColoredGraph, x_color: int) -> list[str]:
    return ["X" if graph.coloring[v] == x_color else "Z" for v in range(graph.n)]


def check_copy(session: CopySession, graph: ColoredGraph, x_color: int) -> dict[int, bool]:
    """Measure one copy and return, per site of ``x_color``, whether its parity check passed."""
    labels = measurement_labels(graph, x_color)
    outcomes = {v: session.measure(v, labels[v]) for v in range(graph.n)}
    checks = {}
    for v in graph.color_class(x_color):
        predicted = int(np.prod([outcomes[u] for u in graph.neighbours(v)], dtype=np.int64))
        checks[v] = outcomes[v] == predicted
    return checks


def run_stabilizer_group(
    backend: MeasurementBackend,
    graph: ColoredGraph,
    x_color: int,
    copies: Sequence[int],
    seed: int,
    group: int,
) -> StabilizerVerdict:
    """Stabilizer test for ``x_color`` on the given copies, uniforms from ``group``'s stream."""
    uniforms = copy_uniforms(seed, group, len(copies), graph.n)
    site_failures = {v: 0 for v in graph.color_class(x_color)}
    failing_copies = 0
    for row, copy_index in enumerate(copies):
        session = backend.open(seed, int(copy_index), uniforms[row])
        checks = check_copy(session, graph, x_color)
        for v, ok in checks.items():
            site_failures[v] += 0 if ok else 1
        failing_copies += 0 if all(checks.values()) else 1
    verdict = StabilizerVerdict(
        color=x_color,
        m=len(copies),
        passed=failing_copies == 0,
        failing_copies=failing_copies,
        site_failures=site_failures,
    )
    logger.debug("Stabilizer test color %d: %s", x_color, verdict)
    return verdict


def run_stabilizer_test(
    device: DeviceModel, graph: ColoredGraph, x_color: int, m: int, seed: int
) -> StabilizerVerdict:
    """Stabilizer test on m fresh copies of ``device``; pass iff every check holds on every copy."""
    device.require_copies(m)
    return run_stabilizer_group(DeviceBackend(device), graph, x_color, range(m), seed, group=0)


def _check_table(graph: ColoredGraph, x_color: int) -> dict[int, np.ndarray]:
    """Per site of ``x_color``: boolean table over all outcome strings, True where the check fails.

    Index 0 of every axis is outcome +1, site 0 most significant.
    """
    n = graph.n
    flat = np.arange(2**n)
    bits = (flat[:, None] >> (n - 1 - np.arange(n))) & 1
    table = {}
    for v in graph.color_class(x_color):
        parity = np.zeros(len(flat), dtype=np.int64)
        for u in graph.neighbours(v):
            parity ^= bits[:, u]
        table[v] = bits[:, v] != parity
    return table


def _outcome_probabilities(device: DeviceModel, graph: ColoredGraph, x_color: int) -> np.ndarray:
    labels = measurement_labels(graph, x_color)
    observables = [device.observable(v, labels[v]) for v in range(graph.n)]
    return joint_distribution(device.state, observables).reshape(-1)


def site_failure_probabilities(device: DeviceModel, graph: ColoredGraph, x_color: int) -> dict[int, float]:
    """Exact per-copy failure probability of each site's parity check.

    Hooks of the device are ignored; the computation uses its base state and
    observables.
    """
    probs = _outcome_probabilities(device, graph, x_color)
    return {v: float(probs[fails].sum()) for v, fails in _check_table(graph, x_color).items()}


def stabilizer_pass_probability(device: DeviceModel, graph: ColoredGraph, x_color: int) -> float:
    """Exact per-copy probability that every check of ``x_color`` passes."""
    probs = _outcome_probabilities(device, graph, x_color)
    any_fail = np.zeros(len(probs), dtype=bool)
    for fails in _check_table(graph, x_color).values():
        any_fail |= fails
    return float(min(1.0, max(0.0, probs[~any_fail].sum())))
