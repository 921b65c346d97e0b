"""Tests for colored graphs, partitions and resource counts."""

import pytest

from src.exceptions import ProtocolError, ValidationError
from src.graphs import (
    ColoredGraph,
    choose_partners,
    complete_graph,
    exhaustive_partition,
    group_count,
    group_count_for,
    partition_non_conflict,
    path_graph,
    triangular_lattice,
    validate,
    with_partitions,
)


class TestColoredGraph:
    """Test suite for the graph value type and file format."""

    def test_bundled_graphs_are_valid(self, small_graphs):
        """Test every bundled and generated graph satisfies the invariants."""
        for graph in small_graphs:
            assert validate(graph) == [], graph.name

    def test_json_round_trip(self, path3, tmp_path):
        """Test a written graph file reads back equal."""
        target = tmp_path / "path.json"
        path3.to_json(target)
        loaded = ColoredGraph.from_json(target)
        assert loaded.edges == path3.edges
        assert loaded.partitions == path3.partitions

    def test_wrong_format_version(self):
        """Test unknown format versions are refused."""
        with pytest.raises(ValidationError):
            ColoredGraph.from_dict({"format": 2, "n": 1, "edges": [], "coloring": [0]})

    def test_missing_file(self, tmp_path):
        """Test an unreadable file raises ValidationError."""
        with pytest.raises(ValidationError):
            ColoredGraph.from_json(tmp_path / "missing.json")

    def test_improper_coloring_reported(self):
        """Test an edge inside one color class is a violation."""
        graph = ColoredGraph(2, ((0, 1),), (0, 0), {0: ((0,), (1,))})
        assert any("joins two vertices" in v for v in validate(graph))

    def test_conflicting_subset_reported(self, path3):
        """Test two vertices sharing a neighbour cannot share a subset."""
        graph = path3.with_partition_map({0: ((0, 2),), 1: ((1,),)}, "given")
        assert any("share neighbours" in v for v in validate(graph))

    def test_networkx_view(self, triangle):
        """Test the networkx view carries colors."""
        nx_graph = triangle.to_networkx()
        assert nx_graph.number_of_edges() == 3
        assert {data["color"] for _, data in nx_graph.nodes(data=True)} == {0, 1, 2}


class TestPartitions:
    """Test suite for non-conflict partitioning."""

    def test_greedy_path(self):
        """Test same-colored path vertices two apart are split."""
        graph = path_graph(3)
        assert partition_non_conflict(graph, 0) == [[0], [2]]

    def test_exhaustive_is_minimal(self):
        """Test the exhaustive partition never uses more subsets than greedy."""
        graph = triangular_lattice(3, 3)
        for color in graph.colors:
            assert len(exhaustive_partition(graph, color)) <= len(partition_non_conflict(graph, color))

    def test_exhaustive_limit(self):
        """Test oversized classes are refused."""
        graph = path_graph(8)
        with pytest.raises(ValidationError):
            exhaustive_partition(graph, 0, limit=2)

    def test_with_partitions_records_mode(self):
        """Test the recorded partition mode."""
        assert with_partitions(path_graph(4), "exhaustive").partition_mode == "exhaustive"
        with pytest.raises(ValidationError):
            with_partitions(path_graph(4), "random")

    def test_lattice_l_values(self):
        """Test triangular lattice subsets stay within three per color."""
        graph = triangular_lattice(4, 4)
        assert validate(graph) == []
        assert max(graph.l_values()) <= 3


class TestPartnersAndCounts:
    """Test suite for partner choice and c_3."""

    def test_partner_is_neighbour(self, triangle):
        """Test the partner of a vertex is one of its neighbours."""
        partners = choose_partners(triangle, (0,))
        assert partners == {0: 1}

    def test_conflicting_subset_rejected(self, path3):
        """Test a subset with a shared neighbour is a protocol error."""
        with pytest.raises(ProtocolError):
            choose_partners(path3, (0, 2))

    def test_group_counts(self, path3, triangle):
        """Test c_3 = k + 8 sum(l_i) on three- and two-colored graphs."""
        assert group_count(path3) == 2 + 8 * 3
        assert group_count(triangle) == 3 + 8 * 3
        assert group_count_for([2, 3, 2]) == 3 + 8 * 7

    def test_k_color_count(self):
        """Test the k-color count on the complete graph."""
        assert group_count(complete_graph(4)) == 4 + 8 * 4

    def test_negative_counts_rejected(self):
        """Test negative subset counts are refused."""
        with pytest.raises(ValidationError):
            group_count_for([1, -1])
