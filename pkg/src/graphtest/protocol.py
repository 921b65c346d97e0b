"""Test (4): stabilizer groups, Bell-test blocks per non-conflict subset, one retained copy."""

import csv
import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from src.belltest import (
    GROUP_SETTINGS,
    DeviceModel,
    Test2Report,
    epsilons_from_report,
    evaluate_test2,
)
from src.config import protocol_settings
from src.exceptions import ProtocolError, ValidationError
from src.extraction import delta_chain
from src.graphs import ColoredGraph, group_count
from src.graphtest.backend import DeviceBackend, MeasurementBackend
from src.graphtest.models import (
    GraphSummary,
    SiteBound,
    StabilizerVerdict,
    Test4Report,
    Theorem2Outputs,
)
from src.graphtest.reduction import run_subset_groups
from src.graphtest.stabilizer import run_stabilizer_group, stabilizer_pass_probability
from src.seeding import permutation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupBlock:
    """A run of consecutive groups sharing one task."""

    kind: str  # "stabilizer" or "bell"
    color: int
    first_group: int
    size: int
    subset_index: int = -1
    subset: tuple[int, ...] = ()


def group_layout(graph: ColoredGraph) -> list[GroupBlock]:
    """Group blocks in protocol order.

    Groups 0..k-1 run the stabilizer test of each color in ``graph.colors``
    order; then every (color, subset) pair takes a block of eight groups in
    GROUP_SETTINGS order.
    """
    blocks = [GroupBlock("stabilizer", color, g, 1) for g, color in enumerate(graph.colors)]
    group = len(blocks)
    for color in graph.colors:
        for index, subset in enumerate(graph.subsets(color)):
            blocks.append(GroupBlock("bell", color, group, len(GROUP_SETTINGS), index, tuple(subset)))
            group += len(GROUP_SETTINGS)
    if group != group_count(graph):
        raise AssertionError("group layout disagrees with group_count")
    return blocks


def _summary(graph: ColoredGraph) -> GraphSummary:
    return GraphSummary(
        name=graph.name,
        n=graph.n,
        k=graph.k,
        l_values=list(graph.l_values()),
        partition_mode=graph.partition_mode,
    )


def _site_bound(report: Test2Report, block: GroupBlock, alpha: float, c_prime, c_double_prime) -> SiteBound:
    site, partner = report.sites
    bound = SiteBound(site=site, partner=partner, color=block.color, subset_index=block.subset_index)
    if report.passed:
        eps = epsilons_from_report(report, c_prime, c_double_prime, alpha)
        chain = delta_chain(eps)
        bound = bound.model_copy(update={"epsilons": eps, "delta1": chain.delta1, "delta2": chain.delta2})
    return bound


def run_test4(
    device: DeviceModel | None,
    graph: ColoredGraph,
    m: int,
    c1: float,
    seed: int,
    *,
    alpha: float | None = None,
    c_prime: float | None = None,
    c_double_prime: float | None = None,
    threads: int = 1,
    backend: MeasurementBackend | None = None,
) -> Test4Report:
    """Run Test (4) on group_count(graph) * m + 1 copies.

    Copies are shuffled with the seed's permutation stream; group g takes
    positions g*m .. (g+1)*m - 1 and the last position is retained as the
    final copy. ``backend`` replaces direct access to ``device`` (delegated runs).

    Raises:
        ValidationError: If m < 1, c1 <= 0 or the graph carries no partitions
        InsufficientCopiesError: If the source cannot furnish every copy
    """
    if m < 1 or c1 <= 0:
        raise ValidationError("Test (4) needs m >= 1 and c1 > 0", details={"m": m, "c1": c1})
    if backend is None:
        if device is None:
            raise ValidationError("Either a device or a backend is required")
        backend = DeviceBackend(device)
    if backend.n_sites != graph.n:
        raise ValidationError("Device and graph disagree on the number of sites",
                              details={"device": backend.n_sites, "graph": graph.n})
    alpha = protocol_settings().alpha if alpha is None else alpha

    layout = group_layout(graph)
    groups = group_count(graph)
    total = groups * m + 1
    backend.require_copies(total)
    start = backend.prepared
    order = permutation(seed, total)
    copies_of = [order[g * m : (g + 1) * m] for g in range(groups)]
    logger.info("Test (4) on %s: graph=%s n=%d k=%d groups=%d m=%d c1=%.6g seed=%d",
                backend.name, graph.name, graph.n, graph.k, groups, m, c1, seed)

    def run_block(block: GroupBlock):
        if block.kind == "stabilizer":
            return run_stabilizer_group(backend, graph, block.color, copies_of[block.first_group],
                                        seed, block.first_group)
        group_copies = copies_of[block.first_group : block.first_group + block.size]
        return run_subset_groups(backend, graph, block.color, block.subset, group_copies,
                                 block.first_group, seed)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_block, layout))
    else:
        results = [run_block(block) for block in layout]

    stabilizer: list[StabilizerVerdict] = []
    bell: list[Test2Report] = []
    sites: list[SiteBound] = []
    for block, result in zip(layout, results):
        if block.kind == "stabilizer":
            stabilizer.append(result)
            continue
        partners, products = result
        for i, j in partners.items():
            report = evaluate_test2(
                products[i], m, c1, seed, device=backend.name, sites=(i, j), alpha=alpha,
                c_prime=c_prime, c_double_prime=c_double_prime,
            )
            bell.append(report)
            sites.append(_site_bound(report, block, alpha, c_prime, c_double_prime))

    final_copy = int(order[-1])
    final = backend.final_device(seed, final_copy)
    diagnostics = {
        color: max(0.0, 1.0 - stabilizer_pass_probability(final, graph, color)) for color in graph.colors
    }
    passed = all(v.passed for v in stabilizer) and all(r.passed for r in bell)
    report = Test4Report(
        device=backend.name,
        graph=_summary(graph),
        m=m,
        c1=c1,
        seed=seed,
        group_count=groups,
        stabilizer=stabilizer,
        bell=bell,
        sites=sites,
        final_copy=final_copy,
        diagnostics=diagnostics,
        copies_consumed=backend.prepared - start,
        passed=passed,
    )
    logger.info("Test (4) on %s: passed=%s copies=%d", backend.name, passed, report.copies_consumed)
    return report


def precision_level(n: int, m: int, c2: float) -> float:
    """delta = c2 (log n / m)^(1/4)."""
    if n < 1 or m < 1:
        raise ValidationError("Precision level needs n >= 1 and m >= 1", details={"n": n, "m": m})
    return c2 * (math.log(n) / m) ** 0.25


def theorem2_outputs(report: Test4Report, alpha: float | None = None, c2: float | None = None) -> Theorem2Outputs:
    """Precision level of a passed report and the final-copy diagnostics against alpha / m.

    Raises:
        ProtocolError: If the report did not pass
    """
    if not report.passed:
        raise ProtocolError("Precision outputs are only defined for passed reports",
                            details={"device": report.device})
    settings = protocol_settings()
    alpha = settings.alpha if alpha is None else alpha
    c2 = settings.c2 if c2 is None else c2
    threshold = alpha / report.m
    violations = sorted(color for color, value in report.diagnostics.items() if value > threshold)
    if violations:
        logger.warning("Final copy of %s exceeds alpha/m on colors %s", report.device, violations)
    return Theorem2Outputs(
        n=report.graph.n,
        m=report.m,
        c2=c2,
        alpha=alpha,
        delta=precision_level(report.graph.n, report.m, c2),
        diagnostic_threshold=threshold,
        diagnostics=report.diagnostics,
        violations=violations,
    )


SITE_TABLE_FIELDS = ("site", "partner", "color", "subset_index", "passed",
                     "eps1", "eps2", "eps3", "eps4", "eps5", "delta1", "delta2")


def site_table_rows(report: Test4Report) -> list[dict]:
    """One row per tested site with its epsilons and deltas (empty when the site failed)."""
    rows = []
    for bound, bell in zip(report.sites, report.bell):
        eps = bound.epsilons.as_tuple() if bound.epsilons else ("",) * 5
        rows.append(
            dict(zip(SITE_TABLE_FIELDS, (bound.site, bound.partner, bound.color, bound.subset_index,
                                         bell.passed, *eps,
                                         "" if bound.delta1 is None else bound.delta1,
                                         "" if bound.delta2 is None else bound.delta2)))
        )
    return rows


def site_table_csv(report: Test4Report) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=SITE_TABLE_FIELDS)
    writer.writeheader()
    writer.writerows(site_table_rows(report))
    return buffer.getvalue()
