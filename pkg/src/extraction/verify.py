"""Numerical check of the extraction lemmas on a concrete device."""

import logging

import numpy as np

from src.belltest import DeviceModel, EpsilonSet, bell_pair_graph
from src.config import protocol_settings, simulation_settings
from src.extraction.chain import SQRT2, counted_delta1_prime, delta_chain, measure_epsilons
from src.extraction.isometry import (
    adjoint_isometries,
    apply_isometries,
    build_isometries,
    check_dense_limit,
    operator_deviation,
)
from src.extraction.models import (
    DeltaChain,
    ExtractionResult,
    IsometryBundle,
    LemmaCheck,
    matrix_pairs,
)
from src.hilbert import apply_operator, make_graph_state, trusted_matrix

logger = logging.getLogger(__name__)

CHECK_TOLERANCE = 1e-9

# (label, site position) of the operators the lemmas track
TRACKED = (("X", 0), ("Z", 0), ("X", 1), ("Z", 1), ("A0", 0), ("A1", 0))


def _check(name: str, measured: float, bound: float, note: str = "") -> LemmaCheck:
    return LemmaCheck(
        name=name,
        measured=float(measured),
        bound=float(bound),
        holds=bool(measured <= bound + CHECK_TOLERANCE),
        note=note,
    )


def _norm(vector: np.ndarray) -> float:
    return float(np.linalg.norm(vector))


def _trusted_target(label: str, position: int, target: np.ndarray) -> np.ndarray:
    return apply_operator(target, 2 + position, trusted_matrix(label))


def _premise_checks(device: DeviceModel, sites: tuple[int, int], chain: DeltaChain) -> list[LemmaCheck]:
    psi = device.state.as_tensor()

    def on(site_pos: int, label: str, tensor: np.ndarray) -> np.ndarray:
        return apply_operator(tensor, site_pos, device.observable(sites[site_pos], label).matrix)

    anticommutator = on(1, "X", on(1, "Z", psi)) + on(1, "Z", on(1, "X", psi))
    x1_z2 = on(0, "X", psi) - on(1, "Z", psi)
    z1_x2 = on(0, "Z", psi) - on(1, "X", psi)
    sum_zx = (on(1, "Z", psi) + on(1, "X", psi)) / SQRT2
    diff_zx = (on(1, "Z", psi) - on(1, "X", psi)) / SQRT2
    return [
        _check("anticommutation", _norm(anticommutator), 2.0 * chain.eps1_prime),
        _check("x1_z2", _norm(x1_z2), chain.eps2_prime),
        _check("z1_x2", _norm(z1_x2), chain.eps3_prime),
        _check("a0_alignment", _norm(on(0, "A0", psi) - sum_zx), chain.eps4_prime),
        _check("a1_alignment", _norm(on(0, "A1", psi) - diff_zx), chain.eps4_prime),
    ]


def verify_lemma_chain(
    device: DeviceModel,
    eps: EpsilonSet | None = None,
    *,
    safety_factor: float | None = None,
    sites: tuple[int, int] = (0, 1),
    bundle: IsometryBundle | None = None,
) -> list[LemmaCheck]:
    """Evaluate every lemma inequality densely for ``device``.

    The state residual is held against the closed-form delta1'. Operator-level
    lines whose constants are not counted in closed form scale the fully counted
    residual bound by ``safety_factor``.
    """
    if safety_factor is None:
        safety_factor = protocol_settings().safety_factor
    eps = eps if eps is not None else measure_epsilons(device, sites)
    chain = delta_chain(eps)
    bundle = bundle or build_isometries(device, sites)

    psi = device.state.as_tensor()
    phi = make_graph_state(bell_pair_graph()).as_tensor()
    target = np.multiply.outer(bundle.junk, phi)
    mapped = apply_isometries(bundle, psi)

    counted = counted_delta1_prime(chain)
    kappa_d1 = safety_factor * counted
    kappa_d2 = SQRT2 * kappa_d1 + chain.eps4_prime

    checks = _premise_checks(device, sites, chain)
    residual = _norm(mapped - target)
    checks.append(_check("state", residual, chain.delta1_prime))

    for label, position in TRACKED:
        untrusted = device.observable(sites[position], label).matrix
        is_a = label.startswith("A")
        name = f"{label}{position + 1}"

        moved = apply_isometries(bundle, apply_operator(psi, position, untrusted))
        bound = chain.eps4_prime + SQRT2 * kappa_d1 if is_a else kappa_d1
        checks.append(_check(f"operator_{name}", _norm(moved - _trusted_target(label, position, target)), bound))

        pulled = apply_isometries(bundle, apply_operator(adjoint_isometries(bundle, target), position, untrusted))
        l4_bound = counted + kappa_d2 if is_a else (1.0 + safety_factor) * counted
        checks.append(
            _check(f"conjugated_{name}", _norm(pulled - _trusted_target(label, position, target)), l4_bound)
        )

        commutator = moved - _trusted_target(label, position, mapped)
        checks.append(_check(f"intertwining_{name}", SQRT2 * _norm(commutator), SQRT2 * l4_bound))

    failed = [c.name for c in checks if not c.holds]
    if failed:
        logger.warning("Lemma checks failed for %s: %s", device.name, ", ".join(failed))
    else:
        logger.info("All %d lemma checks hold for %s", len(checks), device.name)
    return checks


def _deviations(device: DeviceModel, bundle: IsometryBundle, sites: tuple[int, int], **norm_options) -> dict[str, float]:
    deviations = {}
    for label, position in TRACKED:
        isometry = bundle.u1 if position == 0 else bundle.u2
        untrusted = device.observable(sites[position], label).matrix
        deviations[f"{label}{position + 1}"] = operator_deviation(
            isometry, untrusted, trusted_matrix(label), **norm_options
        )
    return deviations


def extract(
    device: DeviceModel,
    eps: EpsilonSet | None = None,
    *,
    safety_factor: float | None = None,
    dense_limit: int | None = None,
    include_matrices: bool = False,
    sites: tuple[int, int] = (0, 1),
) -> ExtractionResult:
    """Build the isometries of ``device`` and verify the bound chain on it.

    Args:
        device: Two-site device model
        eps: Closeness parameters to certify; measured exactly from the device if None
        safety_factor: Multiplier for uncounted operator-level constants (config if None)
        dense_limit: Largest d1*d2 allowed (config if None)
        include_matrices: Embed U1, U2 and the junk vector in the result

    Raises:
        DimensionLimitError: If d1*d2 exceeds the dense limit
    """
    simulation = simulation_settings()
    limit = dense_limit if dense_limit is not None else simulation.dense_limit
    check_dense_limit(device.dims, limit)

    eps = eps if eps is not None else measure_epsilons(device, sites)
    chain = delta_chain(eps)
    bundle = build_isometries(device, sites)
    checks = verify_lemma_chain(device, eps, safety_factor=safety_factor, sites=sites, bundle=bundle)
    deviations = _deviations(
        device,
        bundle,
        sites,
        threshold=simulation.power_iteration_threshold,
        tolerance=simulation.power_iteration_tolerance,
    )
    logger.debug("Extraction deviations for %s: %s", device.name, deviations)

    d1, d2 = device.dims
    return ExtractionResult(
        device=device.name,
        dims=(d1, d2),
        epsilons=eps,
        chain=chain,
        junk_norm=bundle.junk_norm,
        deviations=deviations,
        checks=checks,
        all_hold=all(c.holds for c in checks),
        u1_shape=tuple(bundle.u1.shape),
        u2_shape=tuple(bundle.u2.shape),
        u1=matrix_pairs(bundle.u1) if include_matrices else None,
        u2=matrix_pairs(bundle.u2) if include_matrices else None,
        junk=matrix_pairs(bundle.junk) if include_matrices else None,
    )
