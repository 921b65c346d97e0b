"""Colored graphs, non-conflict partitions and resource counts."""

from src.graphs.lattices import (
    complete_graph,
    group_count,
    group_count_for,
    path_graph,
    triangular_lattice,
)
from src.graphs.model import GRAPH_FORMAT, ColoredGraph
from src.graphs.partition import (
    choose_partners,
    exhaustive_partition,
    partition_non_conflict,
    validate,
    with_partitions,
)

__all__ = [
    "ColoredGraph",
    "GRAPH_FORMAT",
    "validate",
    "partition_non_conflict",
    "exhaustive_partition",
    "with_partitions",
    "choose_partners",
    "triangular_lattice",
    "complete_graph",
    "path_graph",
    "group_count",
    "group_count_for",
]
