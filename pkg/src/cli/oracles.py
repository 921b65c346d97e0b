"""Brute-force cross-checks run by ``mbqc-selftest oracle``."""

import logging
from collections.abc import Sequence
from fractions import Fraction
from itertools import product

import numpy as np

from src.belltest import honest_graph_device
from src.cli.models import OracleCheck, OracleReport
from src.extraction import spectral_norm
from src.graphs import ColoredGraph
from src.graphtest import stabilizer_pass_probability
from src.hilbert import PAULI_X, PAULI_Z, BinaryObservable, joint_distribution, trusted_matrix
from src.stats import (
    hypergeom_pmf,
    hypergeom_pmf_exact,
    hypergeom_variance,
    zero_test_conditional,
    zero_test_worst_case,
)

logger = logging.getLogger(__name__)

EXACT_TOLERANCE = 1e-12


def hypergeometric_oracle(max_n: int = 20) -> OracleCheck:
    """pmf, normalisation and variance against exhaustive rational enumeration."""
    worst = 0.0
    cases = 0
    for n in range(2, max_n + 1):
        for m in range(n + 1):
            for k in range(n + 1):
                pmf = [hypergeom_pmf_exact(n, m, k, x) for x in range(m + 1)]
                if sum(pmf) != 1:
                    return OracleCheck(name="hypergeometric", passed=False, cases=cases,
                                       detail=f"pmf does not sum to one at n={n} m={m} k={k}")
                mean = sum(x * p for x, p in enumerate(pmf))
                variance = sum((x - mean) ** 2 * p for x, p in enumerate(pmf))
                closed = Fraction((n - m) * m * (n - k) * k, (n - 1) * n * n)
                if variance != closed or variance > Fraction(m, 4):
                    return OracleCheck(name="hypergeometric", passed=False, cases=cases,
                                       detail=f"variance mismatch at n={n} m={m} k={k}")
                worst = max(
                    worst,
                    abs(hypergeom_variance(n, m, k) - float(closed)),
                    *(abs(hypergeom_pmf(n, m, k, x) - float(p)) for x, p in enumerate(pmf)),
                )
                cases += 1
    return OracleCheck(name="hypergeometric", passed=worst <= EXACT_TOLERANCE, cases=cases, worst=worst)


def zero_test_oracle(max_m: int = 200, alpha: float = 0.05) -> OracleCheck:
    """Worst-case mixture of T(m, 0) against the (1 - alpha) / (m alpha) bound."""
    worst = 0.0
    exact_alpha = Fraction(alpha)
    for m in range(1, max_m + 1):
        mixture = zero_test_worst_case(m, alpha)
        # any lighter adversary weight keeping the pass probability >= alpha does no better
        for step in range(1, 5):
            weight = Fraction(step, 4) * Fraction(mixture.weight)
            pass_probability, conditional = zero_test_conditional(m, weight)
            if pass_probability >= exact_alpha:
                worst = max(worst, float(conditional) - mixture.bound)
        worst = max(worst, mixture.conditional_success - mixture.bound)
    return OracleCheck(name="zero-test", passed=worst <= EXACT_TOLERANCE, cases=max_m, worst=worst)


def _stabilizer_enumeration(graph: ColoredGraph, color: int) -> float:
    """Pass probability of one stabilizer step by enumerating every joint outcome."""
    device = honest_graph_device(graph)
    x_sites = set(graph.color_class(color))
    observables = [
        BinaryObservable(v, trusted_matrix("X" if v in x_sites else "Z"), "X" if v in x_sites else "Z")
        for v in range(graph.n)
    ]
    distribution = joint_distribution(device.state, observables)
    total = 0.0
    for index, outcomes in enumerate(product((1, -1), repeat=graph.n)):
        ok = all(
            outcomes[v] * np.prod([outcomes[u] for u in graph.neighbours(v)]) == 1 for v in x_sites
        )
        if ok:
            total += float(distribution.reshape(-1)[index])
    return total


def stabilizer_oracle(graphs: Sequence[ColoredGraph]) -> OracleCheck:
    """Honest graph states pass every color's stabilizer step with probability one."""
    worst = 0.0
    cases = 0
    for graph in graphs:
        if graph.n > 10:
            logger.info("Skipping stabilizer enumeration on %s (n=%d)", graph.name, graph.n)
            continue
        device = honest_graph_device(graph)
        for color in graph.colors:
            exact = stabilizer_pass_probability(device, graph, color)
            enumerated = _stabilizer_enumeration(graph, color)
            worst = max(worst, abs(1.0 - exact), abs(1.0 - enumerated))
            cases += 1
    return OracleCheck(name="stabilizer", passed=worst <= 1e-10, cases=cases, worst=worst)


def norm_oracle(sizes: Sequence[int] = (4, 16, 64), seed: int = 0) -> OracleCheck:
    """Power-iteration operator norms against dense SVD."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    matrices = [PAULI_X + PAULI_Z, np.kron(PAULI_X, PAULI_Z)]
    matrices += [rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)) for d in sizes]
    for matrix in matrices:
        dense = float(np.linalg.norm(matrix, 2))
        iterated = spectral_norm(matrix, threshold=0, tolerance=1e-12, max_iterations=20000)
        worst = max(worst, abs(dense - iterated) / max(dense, 1.0))
    return OracleCheck(name="operator-norm", passed=worst <= 1e-6, cases=len(matrices), worst=worst)


def run_oracles(graphs: Sequence[ColoredGraph], max_n: int = 20, max_m: int = 200,
                alpha: float = 0.05, seed: int = 0) -> OracleReport:
    checks = [
        hypergeometric_oracle(max_n),
        zero_test_oracle(max_m, alpha),
        stabilizer_oracle(graphs),
        norm_oracle(seed=seed),
    ]
    for check in checks:
        logger.info("Oracle %s: passed=%s cases=%d worst=%.3g", check.name, check.passed, check.cases, check.worst)
    return OracleReport(checks=checks, passed=all(c.passed for c in checks))
