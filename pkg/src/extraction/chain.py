"""Closeness parameters of a device and the epsilon to delta bound chain."""

import math

from src.belltest import GROUP_SETTINGS, DeviceModel, EpsilonSet
from src.extraction.models import DeltaChain
from src.hilbert import BinaryObservable, expectation

SQRT2 = math.sqrt(2.0)

# delta1 = sum_j HAT_C[j] sqrt(eps_j), j = 1..3
HAT_C = (2.0**1.75, 4.0, 8.0)
# delta2 <= sum_j BAR_C[j] sqrt(eps_j) + sqrt(2) (eps2^(1/4) + eps3^(1/4)), j = 1..5
BAR_C = (
    (1.0 + SQRT2) / 2.0 * HAT_C[0],
    (1.0 + SQRT2) / 2.0 * HAT_C[1],
    (1.0 + SQRT2) / 2.0 * HAT_C[2],
    2.0**0.75,
    1.0,
)


def _pair_expectation(device: DeviceModel, a: BinaryObservable, b: BinaryObservable) -> float:
    return expectation(device.state, [a, b])


def correlators(device: DeviceModel, sites: tuple[int, int] = (0, 1)) -> dict[str, float]:
    """Exact two-site correlators of the eight group settings, keyed ``"A0,Z"`` etc."""
    return {
        f"{first},{second}": _pair_expectation(
            device, device.observable(sites[0], first), device.observable(sites[1], second)
        )
        for first, second in GROUP_SETTINGS
    }


def chsh_value(device: DeviceModel, sites: tuple[int, int] = (0, 1)) -> float:
    """<A0'(Z2' + X2') + A1'(Z2' - X2')>, at most 2 sqrt(2)."""
    c = correlators(device, sites)
    return c["A0,Z"] + c["A0,X"] + c["A1,Z"] - c["A1,X"]


def measure_epsilons(device: DeviceModel, sites: tuple[int, int] = (0, 1)) -> EpsilonSet:
    """Tightest epsilons the exact correlators of ``device`` satisfy."""
    c = correlators(device, sites)
    a0 = c["A0,Z"] + c["A0,X"]
    a1 = c["A1,Z"] - c["A1,X"]
    return EpsilonSet(
        eps1=max(0.0, 2.0 * SQRT2 - (a0 + a1)),
        eps2=max(0.0, 1.0 - c["X,Z"]),
        eps3=max(0.0, 1.0 - c["Z,X"]),
        eps4=max(SQRT2 - a0, SQRT2 - a1, 0.0),
        eps5=abs(c["X,X"] + c["Z,Z"]),
    )


def delta_chain(eps: EpsilonSet) -> DeltaChain:
    """Closed-form precision levels.

    eps1' = 2^(5/4) sqrt(eps1), eps2' = sqrt(2 eps2), eps3' = sqrt(2 eps3),
    eps4' = sqrt(sqrt(2) eps4 + eps5/2 + sqrt(eps2) + sqrt(eps3)),
    delta1' = (4 eps3' + eps1' + 2 eps2') / 2, delta2' = sqrt(2) delta1' + eps4',
    delta1 = 2 sqrt(2) delta1', delta2 = sqrt(2) (delta1' + delta2').
    """
    e1, e2, e3, e4, e5 = eps.as_tuple()
    eps1_prime = 2.0**1.25 * math.sqrt(e1)
    eps2_prime = math.sqrt(2.0 * e2)
    eps3_prime = math.sqrt(2.0 * e3)
    eps4_prime = math.sqrt(SQRT2 * e4 + 0.5 * e5 + math.sqrt(e2) + math.sqrt(e3))
    delta1_prime = 0.5 * (4.0 * eps3_prime + eps1_prime + 2.0 * eps2_prime)
    delta2_prime = SQRT2 * delta1_prime + eps4_prime
    return DeltaChain(
        eps1_prime=eps1_prime,
        eps2_prime=eps2_prime,
        eps3_prime=eps3_prime,
        eps4_prime=eps4_prime,
        delta1_prime=delta1_prime,
        delta2_prime=delta2_prime,
        delta1=2.0 * SQRT2 * delta1_prime,
        delta2=SQRT2 * (delta1_prime + delta2_prime),
    )


def counted_delta1_prime(chain: DeltaChain) -> float:
    """State-residual bound with every anticommutator term counted: (4 eps3' + 2 eps1' + 2 eps2') / 2."""
    return 0.5 * (4.0 * chain.eps3_prime + 2.0 * chain.eps1_prime + 2.0 * chain.eps2_prime)


def constant_form_bounds(eps: EpsilonSet) -> tuple[float, float]:
    """delta1 and the upper estimate of delta2 written with the HAT_C / BAR_C constants."""
    roots = [math.sqrt(e) for e in eps.as_tuple()]
    delta1 = sum(c * r for c, r in zip(HAT_C, roots[:3]))
    delta2 = sum(c * r for c, r in zip(BAR_C, roots))
    delta2 += SQRT2 * (eps.eps2**0.25 + eps.eps3**0.25)
    return delta1, delta2
