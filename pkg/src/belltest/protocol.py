"""Test (2): eight groups of m copies, five inequalities on the group averages."""

import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.stats import norm

from src.belltest.devices import DeviceModel
from src.belltest.models import GROUP_SETTINGS, VERDICT_NAMES, EpsilonSet, Test2Report
from src.exceptions import ProtocolError, ValidationError
from src.hilbert import branch, expectation, measure, outcome_probability
from src.seeding import copy_uniforms, permutation

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)


def group_settings() -> tuple[tuple[str, str], ...]:
    """(site 1, site 2) settings of groups 1..8."""
    return GROUP_SETTINGS


def default_epsilon_constants(c1: float, alpha: float) -> tuple[float, float]:
    """Derived defaults c' = 2(1-alpha)/alpha and c'' = c1 + sqrt(2) Phi^{-1}(1-alpha)."""
    return 2.0 * (1.0 - alpha) / alpha, c1 + SQRT2 * float(norm.isf(alpha))


def _epsilons(m: int, c1: float, alpha: float, c_prime, c_double_prime) -> EpsilonSet:
    derived_prime, derived_double = default_epsilon_constants(c1, alpha)
    c_prime = derived_prime if c_prime is None else c_prime
    c_double_prime = derived_double if c_double_prime is None else c_double_prime
    eps23 = c_prime / m
    eps45 = c_double_prime / math.sqrt(m)
    return EpsilonSet(eps1=2.0 * eps45, eps2=eps23, eps3=eps23, eps4=eps45, eps5=eps45)


def evaluate_test2(
    group_products: Sequence[Sequence[int]],
    m: int,
    c1: float,
    seed: int,
    *,
    device: str = "external",
    sites: tuple[int, int] = (0, 1),
    alpha: float = 0.05,
    c_prime: float | None = None,
    c_double_prime: float | None = None,
) -> Test2Report:
    """Apply the five checks to per-group outcome products produced elsewhere.

    Raises:
        ValidationError: If there are not eight groups of m products of +-1
    """
    if m < 1 or c1 <= 0:
        raise ValidationError("Test (2) needs m >= 1 and c1 > 0", details={"m": m, "c1": c1})
    groups = [np.asarray(g, dtype=np.int64) for g in group_products]
    if len(groups) != len(GROUP_SETTINGS) or any(g.shape != (m,) for g in groups):
        raise ValidationError("Expected eight groups of m outcome products",
                              details={"groups": [g.shape for g in groups], "m": m})
    if any(np.any(np.abs(g) != 1) for g in groups):
        raise ValidationError("Outcome products must be +1 or -1")

    averages = [float(g.sum()) / m for g in groups]
    threshold = c1 / math.sqrt(m)
    verdicts = dict(
        zip(
            VERDICT_NAMES,
            (
                bool(np.all(groups[0] == 1)),
                bool(np.all(groups[1] == 1)),
                averages[2] + averages[3] >= SQRT2 - threshold,
                averages[4] - averages[5] >= SQRT2 - threshold,
                abs(averages[6] + averages[7]) <= threshold,
            ),
        )
    )
    passed = all(verdicts.values())
    epsilons = _epsilons(m, c1, alpha, c_prime, c_double_prime) if passed else None
    logger.debug("Test (2) averages %s verdicts %s", averages, verdicts)
    return Test2Report(
        device=device,
        m=m,
        c1=c1,
        seed=seed,
        sites=sites,
        group_averages=averages,
        threshold=threshold,
        verdicts=verdicts,
        epsilons=epsilons,
        passed=passed,
    )


def _group_products(
    device: DeviceModel, group: int, copies: np.ndarray, seed: int, sites: tuple[int, int]
) -> np.ndarray:
    first, second = GROUP_SETTINGS[group]
    uniforms = copy_uniforms(seed, group, len(copies), 2)

    if not device.has_hooks:
        # i.i.d. copies: one exact branch computation serves the whole group
        obs_a = device.observable(sites[0], first)
        obs_b = device.observable(sites[1], second)
        p_a = outcome_probability(device.state, obs_a)
        conditional = {}
        for outcome in (1, -1):
            _, post = branch(device.state, obs_a, outcome)
            conditional[outcome] = 0.0 if post is None else outcome_probability(post, obs_b)
        a = np.where(uniforms[:, 0] < p_a, 1, -1)
        p_b = np.where(a == 1, conditional[1], conditional[-1])
        b = np.where(uniforms[:, 1] < p_b, 1, -1)
        return a * b

    products = np.empty(len(copies), dtype=np.int64)
    for row, copy_index in enumerate(copies):
        state, rng = device.prepare(seed, int(copy_index))
        a, post = measure(state, device.observable(sites[0], first, rng), uniforms[row, 0])
        b, _ = measure(post, device.observable(sites[1], second, rng), uniforms[row, 1])
        products[row] = a * b
    return products


def run_test2(
    device: DeviceModel,
    m: int,
    c1: float,
    seed: int,
    *,
    sites: tuple[int, int] = (0, 1),
    alpha: float = 0.05,
    c_prime: float | None = None,
    c_double_prime: float | None = None,
    threads: int = 1,
) -> Test2Report:
    """Run Test (2) on 8m fresh copies of ``device``.

    Copies are shuffled into eight groups with the seed's permutation stream;
    group g measures GROUP_SETTINGS[g] on ``sites``. Groups may run on
    ``threads`` workers with identical results.

    Raises:
        InsufficientCopiesError: If the device cannot furnish 8m copies
    """
    if m < 1 or c1 <= 0:
        raise ValidationError("Test (2) needs m >= 1 and c1 > 0", details={"m": m, "c1": c1})
    device.require_copies(8 * m)
    order = permutation(seed, 8 * m)
    blocks = [order[g * m : (g + 1) * m] for g in range(len(GROUP_SETTINGS))]
    logger.info("Test (2) on %s: m=%d c1=%.6g seed=%d", device.name, m, c1, seed)

    def run_group(group: int) -> np.ndarray:
        return _group_products(device, group, blocks[group], seed, sites)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            products = list(pool.map(run_group, range(len(blocks))))
    else:
        products = [run_group(g) for g in range(len(blocks))]

    report = evaluate_test2(
        products, m, c1, seed, device=device.name, sites=sites, alpha=alpha,
        c_prime=c_prime, c_double_prime=c_double_prime,
    )
    logger.info("Test (2) on %s: passed=%s", device.name, report.passed)
    return report


def epsilons_from_report(
    report: Test2Report,
    c_prime: float | None = None,
    c_double_prime: float | None = None,
    alpha: float = 0.05,
) -> EpsilonSet:
    """eps2 = eps3 = c'/m, eps4 = eps5 = c''/sqrt(m), eps1 = 2 eps4.

    Raises:
        ProtocolError: If the report did not pass
    """
    if not report.passed:
        raise ProtocolError("Epsilons are only defined for passed reports",
                            details={"device": report.device, "verdicts": report.verdicts})
    return _epsilons(report.m, report.c1, alpha, c_prime, c_double_prime)


def deterministic_check_probabilities(
    device: DeviceModel, sites: tuple[int, int] = (0, 1)
) -> tuple[float, float]:
    """Exact per-copy probabilities that the X'Z' and Z'X' products are +1."""
    x1, z1 = device.observable(sites[0], "X"), device.observable(sites[0], "Z")
    x2, z2 = device.observable(sites[1], "X"), device.observable(sites[1], "Z")
    p_xz = (1.0 + expectation(device.state, [x1, z2])) / 2.0
    p_zx = (1.0 + expectation(device.state, [z1, x2])) / 2.0
    return min(1.0, max(0.0, p_xz)), min(1.0, max(0.0, p_zx))


def deterministic_check_pass_probability(
    device: DeviceModel, m: int, sites: tuple[int, int] = (0, 1)
) -> float:
    """Exact probability that both deterministic checks pass on m copies each."""
    p_xz, p_zx = deterministic_check_probabilities(device, sites)
    return (p_xz * p_zx) ** m
