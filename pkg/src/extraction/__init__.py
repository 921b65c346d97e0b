"""Isometry extraction: epsilon to delta bounds and their dense verification."""

from src.belltest.models import EpsilonSet
from src.extraction.chain import (
    BAR_C,
    HAT_C,
    chsh_value,
    constant_form_bounds,
    correlators,
    counted_delta1_prime,
    delta_chain,
    measure_epsilons,
)
from src.extraction.isometry import (
    adjoint_isometries,
    apply_isometries,
    build_isometries,
    check_dense_limit,
    operator_deviation,
    site_isometry,
    spectral_norm,
)
from src.extraction.models import (
    DeltaChain,
    ExtractionResult,
    IsometryBundle,
    LemmaCheck,
    matrix_pairs,
)
from src.extraction.verify import CHECK_TOLERANCE, extract, verify_lemma_chain

__all__ = [
    "EpsilonSet",
    "DeltaChain",
    "LemmaCheck",
    "ExtractionResult",
    "IsometryBundle",
    "matrix_pairs",
    "HAT_C",
    "BAR_C",
    "correlators",
    "chsh_value",
    "measure_epsilons",
    "delta_chain",
    "counted_delta1_prime",
    "constant_form_bounds",
    "site_isometry",
    "build_isometries",
    "apply_isometries",
    "adjoint_isometries",
    "check_dense_limit",
    "spectral_norm",
    "operator_deviation",
    "verify_lemma_chain",
    "extract",
    "CHECK_TOLERANCE",
]
