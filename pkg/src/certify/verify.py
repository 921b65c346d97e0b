"""Dense checks of the certification bounds against per-site isometries."""

import csv
import io
import logging
from collections.abc import Iterable, Sequence
from functools import reduce

import numpy as np

from src.belltest import LABELS, DeviceModel, device_from_state
from src.certify.bounds import incorrect_accept_bound, povm_bound, state_error_bound
from src.certify.lambda_map import (
    apply_steps,
    build_lambda,
    device_matrices,
    povm_element,
    trusted_matrices,
)
from src.certify.models import AcceptDifference, CertificationMargins, PrefixMargin, StateCertification
from src.certify.plan import AdaptivePlan
from src.config import protocol_settings, simulation_settings
from src.exceptions import ValidationError
from src.extraction import check_dense_limit, operator_deviation, site_isometry, spectral_norm
from src.extraction.isometry import KET0, KET1
from src.graphs import ColoredGraph
from src.graphtest import stabilizer_pass_probability
from src.hilbert import PureState, apply_operator, make_graph_state

logger = logging.getLogger(__name__)

TOLERANCE = 1e-9


def site_isometries(device: DeviceModel) -> list[np.ndarray]:
    """Z'-controlled, X'-flipped isometry of every site, trusted qubit started in |0>."""
    return [
        site_isometry(device.observable(v, "Z").matrix, device.observable(v, "X").matrix, (KET0, KET1))
        for v in range(device.n_sites)
    ]


def observable_deviation(device: DeviceModel, isometries: Sequence[np.ndarray] | None = None) -> float:
    """Uniform delta: largest || U_v O'_v - O_v U_v || over sites and the four observables."""
    isometries = site_isometries(device) if isometries is None else isometries
    return max(
        operator_deviation(isometries[v], device.observable(v, label).matrix, trusted_matrices(v, label))
        for v in range(device.n_sites)
        for label in LABELS
    )


def grouped_isometry(isometries: Sequence[np.ndarray], dims: Sequence[int]) -> np.ndarray:
    """Tensor product of site isometries with output ordered (junk..., trusted...)."""
    n = len(dims)
    full = reduce(np.kron, isometries)
    interleaved = full.reshape(*[x for d in dims for x in (d, 2)], int(np.prod(dims)))
    axes = [2 * v for v in range(n)] + [2 * v + 1 for v in range(n)] + [2 * n]
    return interleaved.transpose(axes).reshape(int(np.prod(dims)) * 2**n, int(np.prod(dims)))


def _pullback(isometry: np.ndarray, trusted: np.ndarray) -> np.ndarray:
    junk = isometry.shape[0] // trusted.shape[0]
    return isometry.conj().T @ np.kron(np.eye(junk), trusted) @ isometry


def _check_limit(device: DeviceModel, plan: AdaptivePlan) -> None:
    limit = simulation_settings().dense_limit
    check_dense_limit((*device.dims, *([2] * device.n_sites), 2**plan.n), limit)


def povm_deviation(device: DeviceModel, plan: AdaptivePlan) -> float:
    """max_k || M'_k - U^dagger (I (x) M_k) U || over the outcome strings of ``plan``."""
    _check_limit(device, plan)
    untrusted = build_lambda(device, plan).povm()
    trusted = build_lambda(_trusted_reference(device.n_sites), plan).povm()
    isometry = grouped_isometry(site_isometries(device), device.dims)
    return max(
        spectral_norm(untrusted[k] - _pullback(isometry, trusted[k])) for k in range(len(untrusted))
    )


def _trusted_reference(n: int) -> DeviceModel:
    """Qubit device with ideal observables; its Lambda realizes the trusted POVM."""
    return device_from_state(PureState.basis_state((2,) * n, (0,) * n), name="trusted")


def _prefix_deviation(device: DeviceModel, plan: AdaptivePlan, isometries, steps: int) -> float:
    dims = device.dims
    n = device.n_sites
    size = int(np.prod(dims)) * 2**n
    start = np.eye(size, dtype=complex).reshape(*dims, *([2] * n), size)

    left = apply_steps(start, plan, device_matrices(device), lambda site: site, n, steps)
    for v, iso in enumerate(isometries):
        left = apply_operator(left, v, iso)

    right = start
    for v, iso in enumerate(isometries):
        right = apply_operator(right, v, iso)
    split = right.reshape(*[x for d in dims for x in (d, 2)], *([2] * n), size)
    split = apply_steps(split, plan, trusted_matrices, lambda site: 2 * site + 1, 2 * n, steps)
    right = split.reshape(*[2 * d for d in dims], *([2] * n), size)

    return spectral_norm((left - right).reshape(-1, size))


def verify_proposition_F(
    devices: Iterable[DeviceModel], plan: AdaptivePlan, s: int | None = None
) -> list[PrefixMargin]:
    """Check every prefix W'_j of ``plan`` on every device against s j delta.

    delta is each device's uniform observable deviation.
    """
    s = protocol_settings().s if s is None else s
    margins = []
    for device in devices:
        _check_limit(device, plan)
        isometries = site_isometries(device)
        delta = observable_deviation(device, isometries)
        for step in range(1, plan.n + 1):
            measured = _prefix_deviation(device, plan, isometries, step)
            bound = s * step * delta
            margins.append(
                PrefixMargin(device=device.name, step=step, measured=measured, bound=bound,
                             delta=delta, holds=measured <= bound + TOLERANCE)
            )
    failed = [(m.device, m.step) for m in margins if not m.holds]
    if failed:
        logger.warning("Prefix bound violated for %s", failed)
    return margins


def _trusted_state(device: DeviceModel, isometries) -> np.ndarray:
    n = device.n_sites
    mapped = grouped_isometry(isometries, device.dims) @ device.state.amps
    amplitudes = mapped.reshape(-1, 2**n)
    return amplitudes.T @ amplitudes.conj()


def state_certification(
    device: DeviceModel,
    graph: ColoredGraph,
    alpha: float | None = None,
    m: int = 1,
    delta: float | None = None,
) -> StateCertification:
    """Trace distance and fidelity of the extracted copy against |G>, with both bounds.

    The realized bound replaces 3 alpha / m by the exact per-color failure
    probabilities of the copy.
    """
    if device.n_sites != graph.n:
        raise ValidationError("Device and graph disagree on the number of sites",
                              details={"device": device.n_sites, "graph": graph.n})
    alpha = protocol_settings().alpha if alpha is None else alpha
    check_dense_limit((*device.dims, *([2] * graph.n)), simulation_settings().dense_limit)
    isometries = site_isometries(device)
    delta = observable_deviation(device, isometries) if delta is None else delta

    rho = _trusted_state(device, isometries)
    target = make_graph_state(graph).amps
    eigenvalues = np.linalg.eigvalsh(rho - np.outer(target, target.conj()))
    distance = 0.5 * float(np.sum(np.abs(eigenvalues)))
    fidelity = float(np.real(target.conj() @ rho @ target))
    diagnostics = {
        color: max(0.0, 1.0 - stabilizer_pass_probability(device, graph, color)) for color in graph.colors
    }
    diagnostic_sum = sum(diagnostics.values())
    n = graph.n
    realized = 6.0 * n * delta + diagnostic_sum
    closed = state_error_bound(n, delta, alpha, m)
    return StateCertification(
        device=device.name,
        n=n,
        delta=delta,
        trace_distance=distance,
        trace_distance_squared=distance**2,
        fidelity=fidelity,
        diagnostics=diagnostics,
        diagnostic_sum=diagnostic_sum,
        realized_bound=realized,
        closed_form_bound=closed,
        holds=distance**2 <= realized + TOLERANCE,
        fidelity_step_holds=distance**2 <= 1.0 - fidelity + TOLERANCE,
        within_closed_form=distance**2 <= closed + TOLERANCE,
    )


def accept_difference(
    device: DeviceModel,
    graph: ColoredGraph,
    plan: AdaptivePlan,
    accept: set[tuple[int, ...]],
    alpha: float | None = None,
    m: int = 1,
    delta: float | None = None,
) -> AcceptDifference:
    """|Tr sigma M'_acc - <G|M_acc|G>| for the correct-result element ``accept``."""
    alpha = protocol_settings().alpha if alpha is None else alpha
    _check_limit(device, plan)
    isometries = site_isometries(device)
    delta = observable_deviation(device, isometries) if delta is None else delta

    untrusted = povm_element(build_lambda(device, plan), accept)
    reference = _trusted_reference(graph.n)
    trusted = povm_element(build_lambda(reference, plan), accept)
    target = make_graph_state(graph).amps
    p_untrusted = float(np.real(device.state.amps.conj() @ untrusted @ device.state.amps))
    p_ideal = float(np.real(target.conj() @ trusted @ target))
    deviation = spectral_norm(untrusted - _pullback(grouped_isometry(isometries, device.dims), trusted))
    distance = state_certification(device, graph, alpha, m, delta).trace_distance
    difference = abs(p_untrusted - p_ideal)
    realized = deviation + distance
    closed = incorrect_accept_bound(graph.n, delta, alpha, m)
    return AcceptDifference(
        device=device.name,
        untrusted_accept=p_untrusted,
        ideal_accept=p_ideal,
        difference=difference,
        element_deviation=deviation,
        trace_distance=distance,
        realized_bound=realized,
        closed_form_bound=closed,
        holds=difference <= realized + TOLERANCE,
        within_closed_form=difference <= closed + TOLERANCE,
    )


def run_battery(
    devices: Iterable[DeviceModel],
    graph: ColoredGraph,
    plan: AdaptivePlan,
    accept: set[tuple[int, ...]],
    alpha: float | None = None,
    m: int = 1,
    s: int | None = None,
) -> list[CertificationMargins]:
    """Measured quantities, bounds and margins for each device of the battery."""
    alpha = protocol_settings().alpha if alpha is None else alpha
    s = protocol_settings().s if s is None else s
    rows = []
    for device in devices:
        isometries = site_isometries(device)
        delta = observable_deviation(device, isometries)
        n = graph.n
        povm = povm_deviation(device, plan)
        state = state_certification(device, graph, alpha, m, delta)
        accept_gap = accept_difference(device, graph, plan, accept, alpha, m, delta)
        prefix = verify_proposition_F([device], plan, s)
        p_bound = povm_bound(n, delta, s)
        rows.append(
            CertificationMargins(
                device=device.name,
                n=n,
                delta=delta,
                povm_deviation=povm,
                povm_bound=p_bound,
                povm_margin=p_bound - povm,
                state_error=state.trace_distance_squared,
                state_bound=state.realized_bound,
                state_margin=state.realized_bound - state.trace_distance_squared,
                accept_difference=accept_gap.difference,
                accept_bound=accept_gap.realized_bound,
                accept_margin=accept_gap.realized_bound - accept_gap.difference,
                within_closed_form=state.within_closed_form and accept_gap.within_closed_form,
                proposition_holds=all(p.holds for p in prefix),
            )
        )
        logger.info("Certification battery %s: delta=%.4g povm=%.4g state=%.4g",
                    device.name, delta, povm, state.trace_distance_squared)
    return rows


def margin_table_csv(rows: Sequence[CertificationMargins]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(CertificationMargins.model_fields))
    writer.writeheader()
    for row in rows:
        writer.writerow(row.model_dump())
    return buffer.getvalue()
