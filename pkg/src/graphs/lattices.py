"""Graph generators and the resource count c_3 = k + 8 * sum(l_i)."""

import logging
from collections.abc import Sequence

import networkx as nx

from src.exceptions import ValidationError
from src.graphs.model import ColoredGraph
from src.graphs.partition import with_partitions

logger = logging.getLogger(__name__)


def triangular_lattice(rows: int, cols: int) -> ColoredGraph:
    """Three-colored triangular lattice on a rows x cols rhombic patch.

    Vertex (r, c) has index r * cols + c and joins (r, c+1), (r+1, c) and
    (r+1, c-1). Its color is (c - r) mod 3. Same-colored vertices whose rows
    differ by a multiple of 3 never share a neighbour, so the subsets are the
    row classes r mod 3 and every l is at most 3.
    """
    if rows < 1 or cols < 1:
        raise ValidationError("Lattice needs at least one row and column",
                              details={"rows": rows, "cols": cols})

    def index(r: int, c: int) -> int:
        return r * cols + c

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((index(r, c), index(r, c + 1)))
            if r + 1 < rows:
                edges.append((index(r, c), index(r + 1, c)))
                if c - 1 >= 0:
                    edges.append((index(r, c), index(r + 1, c - 1)))
    coloring = tuple((c - r) % 3 for r in range(rows) for c in range(cols))

    partitions: dict[int, tuple[tuple[int, ...], ...]] = {}
    for color in sorted(set(coloring)):
        by_row: dict[int, list[int]] = {}
        for r in range(rows):
            for c in range(cols):
                if (c - r) % 3 == color:
                    by_row.setdefault(r % 3, []).append(index(r, c))
        partitions[color] = tuple(tuple(v) for _, v in sorted(by_row.items()))

    return ColoredGraph(
        rows * cols,
        tuple(sorted(tuple(sorted(e)) for e in edges)),
        coloring,
        partitions,
        partition_mode="lattice",
        name=f"triangular-{rows}x{cols}",
    )


def complete_graph(k: int) -> ColoredGraph:
    """K_k with every vertex its own color (the smallest k-colorable instance)."""
    graph = nx.complete_graph(k)
    return with_partitions(
        ColoredGraph.from_networkx(graph, {v: v for v in graph.nodes}, name=f"complete-{k}")
    )


def path_graph(n: int) -> ColoredGraph:
    """Path 0-1-...-(n-1), two-colored by parity."""
    graph = nx.path_graph(n)
    return with_partitions(
        ColoredGraph.from_networkx(graph, {v: v % 2 for v in graph.nodes}, name=f"path-{n}")
    )


def group_count_for(l_values: Sequence[int]) -> int:
    """c_3 = k + 8 * sum(l_i) for k colors with subset counts ``l_values``."""
    if any(count < 0 for count in l_values):
        raise ValidationError("Subset counts must be non-negative",
                              details={"l_values": list(l_values)})
    return len(l_values) + 8 * sum(l_values)


def group_count(graph: ColoredGraph) -> int:
    """Number of m-copy groups Test (4) uses for ``graph``."""
    return group_count_for(graph.l_values())
