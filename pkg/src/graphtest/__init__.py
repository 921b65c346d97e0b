"""Graph-state test: stabilizer checks, color-protocol reductions and the grouped run."""

from src.graphtest.backend import CopySession, DeviceBackend, DeviceSession, MeasurementBackend
from src.graphtest.models import (
    GraphSummary,
    SiteBound,
    StabilizerVerdict,
    Test4Report,
    Theorem2Outputs,
)
from src.graphtest.protocol import (
    SITE_TABLE_FIELDS,
    GroupBlock,
    group_layout,
    precision_level,
    run_test4,
    site_table_csv,
    site_table_rows,
    theorem2_outputs,
)
from src.graphtest.reduction import (
    ReducedCopy,
    measure_pairs,
    reduce_session,
    run_color_protocol,
    run_subset_groups,
)
from src.graphtest.stabilizer import (
    check_copy,
    measurement_labels,
    run_stabilizer_group,
    run_stabilizer_test,
    site_failure_probabilities,
    stabilizer_pass_probability,
)

__all__ = [
    "CopySession",
    "MeasurementBackend",
    "DeviceSession",
    "DeviceBackend",
    "StabilizerVerdict",
    "GraphSummary",
    "SiteBound",
    "Test4Report",
    "Theorem2Outputs",
    "GroupBlock",
    "group_layout",
    "run_test4",
    "precision_level",
    "theorem2_outputs",
    "site_table_rows",
    "site_table_csv",
    "SITE_TABLE_FIELDS",
    "ReducedCopy",
    "reduce_session",
    "measure_pairs",
    "run_color_protocol",
    "run_subset_groups",
    "measurement_labels",
    "check_copy",
    "run_stabilizer_group",
    "run_stabilizer_test",
    "site_failure_probabilities",
    "stabilizer_pass_probability",
]
