"""Colored graph value type and its JSON file format.

Graph files (format 1)::

    {"format": 1, "name": "...", "n": 3, "edges": [[0, 1], [1, 2]],
     "coloring": [0, 1, 0], "partitions": {"0": [[0], [2]], "1": [[1]]}}

Vertices are 0..n-1; colors are integer labels; ``partitions`` maps a color to
its non-conflict subsets S_{i,1..l_i}.
"""

import json
import logging
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path
from typing import Any

import networkx as nx

from src.exceptions import ValidationError

logger = logging.getLogger(__name__)

GRAPH_FORMAT = 1

Subsets = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ColoredGraph:
    """Vertex count, edges, coloring and per-color non-conflict partitions.

    Construction normalises types only; use ``validate`` for the graph invariants.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    coloring: tuple[int, ...]
    partitions: dict[int, Subsets] = field(default_factory=dict)
    partition_mode: str = "given"
    name: str = ""

    def __post_init__(self) -> None:
        if int(self.n) < 0:
            raise ValidationError("Vertex count must be non-negative", details={"n": self.n})
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        coloring = tuple(int(c) for c in self.coloring)
        partitions = {
            int(color): tuple(tuple(int(v) for v in subset) for subset in subsets)
            for color, subsets in self.partitions.items()
        }
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "coloring", coloring)
        object.__setattr__(self, "partitions", partitions)

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        """Neighbour sets N_v for every vertex (self-loops ignored)."""
        neighbours: dict[int, set[int]] = {v: set() for v in range(self.n)}
        for u, v in self.edges:
            if u != v and u in neighbours and v in neighbours:
                neighbours[u].add(v)
                neighbours[v].add(u)
        return {v: frozenset(ns) for v, ns in neighbours.items()}

    def neighbours(self, vertex: int) -> frozenset[int]:
        return self.adjacency[vertex]

    def degree(self, vertex: int) -> int:
        return len(self.adjacency[vertex])

    @property
    def colors(self) -> tuple[int, ...]:
        """Distinct color labels in ascending order."""
        return tuple(sorted(set(self.coloring)))

    @property
    def k(self) -> int:
        return len(self.colors)

    def color_class(self, color: int) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.coloring) if c == color)

    def subsets(self, color: int) -> Subsets:
        """Non-conflict subsets of one color.

        Raises:
            ValidationError: If no partition was computed for the color
        """
        if color not in self.partitions:
            raise ValidationError("No partition for color", details={"color": color})
        return self.partitions[color]

    def l_values(self) -> tuple[int, ...]:
        """Number of subsets l_i per color, in color order."""
        return tuple(len(self.subsets(color)) for color in self.colors)

    def with_partition_map(self, partitions: dict[int, Subsets], mode: str) -> "ColoredGraph":
        return replace(self, partitions=partitions, partition_mode=mode)

    def to_networkx(self) -> nx.Graph:
        """networkx view with ``color`` node attributes."""
        graph = nx.Graph(name=self.name)
        graph.add_nodes_from((v, {"color": c}) for v, c in enumerate(self.coloring))
        graph.add_edges_from(self.edges)
        return graph

    @classmethod
    def from_networkx(cls, graph: nx.Graph, coloring: dict | None = None, name: str = "") -> "ColoredGraph":
        """Build from a networkx graph with nodes 0..n-1 and a ``color`` attribute or map."""
        nodes = sorted(graph.nodes)
        if nodes != list(range(len(nodes))):
            raise ValidationError("networkx graph nodes must be 0..n-1")
        if coloring is None:
            coloring = nx.get_node_attributes(graph, "color")
        try:
            colors = tuple(coloring[v] for v in nodes)
        except KeyError as exc:
            raise ValidationError("Every node needs a color", details={"node": exc.args[0]}) from exc
        return cls(len(nodes), tuple(sorted(tuple(sorted(e)) for e in graph.edges)), colors, name=name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "format": GRAPH_FORMAT,
            "name": self.name,
            "n": self.n,
            "edges": [list(e) for e in self.edges],
            "coloring": list(self.coloring),
            "partitions": {
                str(color): [list(s) for s in subsets]
                for color, subsets in sorted(self.partitions.items())
            },
        }

    def to_json(self, path: str | Path | None = None) -> str:
        """Serialise to format-1 JSON, writing it to ``path`` when given."""
        text = json.dumps(self.to_dict(), indent=2)
        if path is not None:
            Path(path).write_text(text + "\n", encoding="utf-8")
        return text

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ColoredGraph":
        """Parse a format-1 graph document.

        Raises:
            ValidationError: On a wrong format version or missing fields
        """
        if data.get("format") != GRAPH_FORMAT:
            raise ValidationError(
                "Unsupported graph file format", details={"format": data.get("format")}
            )
        try:
            return cls(
                n=data["n"],
                edges=tuple(tuple(e) for e in data["edges"]),
                coloring=tuple(data["coloring"]),
                partitions={int(c): s for c, s in (data.get("partitions") or {}).items()},
                partition_mode="given" if data.get("partitions") else "none",
                name=data.get("name", ""),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError("Malformed graph document", details={"error": str(exc)}) from exc

    @classmethod
    def from_json(cls, path: str | Path) -> "ColoredGraph":
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(
                "Cannot read graph file", details={"path": str(path), "error": str(exc)}
            ) from exc
        graph = cls.from_dict(data)
        logger.debug("Loaded graph %s with %d vertices from %s", graph.name, graph.n, path)
        return graph
