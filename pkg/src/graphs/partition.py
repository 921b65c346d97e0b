"""Coloring validation, non-conflict partitioning and partner-site selection."""

import itertools
import logging

from src.exceptions import ProtocolError, ValidationError
from src.graphs.model import ColoredGraph, Subsets

logger = logging.getLogger(__name__)

DEFAULT_EXHAUSTIVE_LIMIT = 12


def validate(graph: ColoredGraph) -> list[str]:
    """Return every invariant violation of the graph; empty when it is well formed."""
    violations: list[str] = []
    if len(graph.coloring) != graph.n:
        violations.append(f"coloring has {len(graph.coloring)} entries for {graph.n} vertices")
        return violations

    seen: set[tuple[int, int]] = set()
    for u, v in graph.edges:
        if not (0 <= u < graph.n and 0 <= v < graph.n):
            violations.append(f"edge ({u},{v}) has an endpoint outside 0..{graph.n - 1}")
            continue
        if u == v:
            violations.append(f"self-loop on vertex {u}")
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            violations.append(f"duplicate edge ({key[0]},{key[1]})")
        seen.add(key)
        if graph.coloring[u] == graph.coloring[v]:
            violations.append(
                f"edge ({u},{v}) joins two vertices of color {graph.coloring[u]}"
            )

    for color in sorted(set(graph.partitions) - set(graph.colors)):
        violations.append(f"partition given for unused color {color}")
    for color in graph.colors:
        if color not in graph.partitions:
            violations.append(f"color {color} has no partition")
            continue
        violations.extend(_partition_violations(graph, color, graph.partitions[color]))
    return violations


def _partition_violations(graph: ColoredGraph, color: int, subsets: Subsets) -> list[str]:
    violations = []
    members = [v for subset in subsets for v in subset]
    expected = set(graph.color_class(color))
    for v in sorted(set(members)):
        if members.count(v) > 1:
            violations.append(f"vertex {v} appears {members.count(v)} times in color {color}")
    for v in sorted(set(members) - expected):
        violations.append(f"vertex {v} is in a subset of color {color} but is not that color")
    for v in sorted(expected - set(members)):
        violations.append(f"vertex {v} of color {color} is in no subset")
    for index, subset in enumerate(subsets):
        if not subset:
            violations.append(f"subset {index} of color {color} is empty")
        for a, b in itertools.combinations(subset, 2):
            if not (0 <= a < graph.n and 0 <= b < graph.n):
                continue
            common = graph.neighbours(a) & graph.neighbours(b)
            if common:
                violations.append(
                    f"vertices {a} and {b} in subset {index} of color {color} "
                    f"share neighbours {sorted(common)}"
                )
    return violations


def _conflicts(graph: ColoredGraph, a: int, b: int) -> bool:
    return bool(graph.neighbours(a) & graph.neighbours(b))


def partition_non_conflict(graph: ColoredGraph, color: int) -> list[list[int]]:
    """Greedy first-fit partition of one color class into non-conflict subsets.

    Vertices are taken by degree descending (index ascending on ties); each goes
    into the first subset whose members share no neighbour with it. The number
    of subsets is an upper bound on the minimum.
    """
    order = sorted(graph.color_class(color), key=lambda v: (-graph.degree(v), v))
    subsets: list[list[int]] = []
    covered: list[set[int]] = []
    for v in order:
        for subset, neighbourhood in zip(subsets, covered):
            if not graph.neighbours(v) & neighbourhood:
                subset.append(v)
                neighbourhood.update(graph.neighbours(v))
                break
        else:
            subsets.append([v])
            covered.append(set(graph.neighbours(v)))
    return [sorted(s) for s in subsets]


def exhaustive_partition(
    graph: ColoredGraph, color: int, limit: int = DEFAULT_EXHAUSTIVE_LIMIT
) -> list[list[int]]:
    """Minimum non-conflict partition of one color class by backtracking.

    Raises:
        ValidationError: If the color class is larger than ``limit``
    """
    vertices = list(graph.color_class(color))
    if len(vertices) > limit:
        raise ValidationError(
            "Color class too large for exhaustive partitioning",
            details={"color": color, "size": len(vertices), "limit": limit},
        )
    if not vertices:
        return []
    for count in range(1, len(vertices) + 1):
        assignment = _assign(graph, vertices, count)
        if assignment is not None:
            return assignment
    raise AssertionError("singleton subsets always satisfy the non-conflict condition")


def _assign(graph: ColoredGraph, vertices: list[int], count: int) -> list[list[int]] | None:
    subsets: list[list[int]] = [[] for _ in range(count)]

    def place(position: int) -> bool:
        if position == len(vertices):
            return True
        v = vertices[position]
        for subset in subsets:
            if all(not _conflicts(graph, v, w) for w in subset):
                subset.append(v)
                if place(position + 1):
                    return True
                subset.pop()
            if not subset:
                # empty subsets are interchangeable
                break
        return False

    return [sorted(s) for s in subsets] if place(0) else None


def with_partitions(
    graph: ColoredGraph, mode: str = "greedy", limit: int = DEFAULT_EXHAUSTIVE_LIMIT
) -> ColoredGraph:
    """Copy of ``graph`` with partitions recomputed for every color.

    ``mode`` is ``greedy`` or ``exhaustive``; the exhaustive mode falls back to
    greedy for classes above ``limit`` and the graph records ``mixed`` then.
    """
    if mode not in ("greedy", "exhaustive"):
        raise ValidationError("Unknown partition mode", details={"mode": mode})
    partitions: dict[int, Subsets] = {}
    used = set()
    for color in graph.colors:
        if mode == "exhaustive" and len(graph.color_class(color)) <= limit:
            subsets = exhaustive_partition(graph, color, limit)
            used.add("exhaustive")
        else:
            subsets = partition_non_conflict(graph, color)
            used.add("greedy")
        partitions[color] = tuple(tuple(s) for s in subsets)
        logger.debug("Color %d partitioned into %d subsets (%s)", color, len(subsets), mode)
    recorded = used.pop() if len(used) == 1 else ("mixed" if used else mode)
    return graph.with_partition_map(partitions, recorded)


def choose_partners(graph: ColoredGraph, subset: tuple[int, ...] | list[int]) -> dict[int, int]:
    """Partner site j_i in N_i for every i of a non-conflict subset.

    Each i gets its lowest-index neighbour that is not already claimed and not
    adjacent to a partner chosen earlier, so that the reduced state factors into
    one pair per i.

    Raises:
        ProtocolError: If the subset violates the non-conflict condition or some
            vertex has no admissible partner
    """
    members = sorted(subset)
    for a, b in itertools.combinations(members, 2):
        if _conflicts(graph, a, b) or b in graph.neighbours(a):
            raise ProtocolError(
                "Subset violates the non-conflict condition",
                details={"vertices": [a, b]},
            )
    partners: dict[int, int] = {}
    for i in members:
        chosen = set(partners.values())
        for j in sorted(graph.neighbours(i)):
            if j in chosen or j in members:
                continue
            if any(j in graph.neighbours(p) for p in chosen):
                continue
            partners[i] = j
            break
        else:
            raise ProtocolError(
                "No admissible partner site",
                details={"vertex": i, "neighbours": sorted(graph.neighbours(i))},
            )
    return partners
