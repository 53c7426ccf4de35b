import io
import random

import pytest

from adjfactor import (
    Graph,
    ParseError,
    average_clustering_coefficient,
    census,
    local_clustering_coefficient,
    parse_edge_list,
    write_edge_list,
)
from helpers import complete_graph, er_graph, path_graph


class TestParse:
    def test_directed_duplicates_collapse(self):
        g, report = parse_edge_list("1 2\n2 3\n2 1\n")
        assert g.node_count == 3
        assert g.edge_count == 2
        assert report.duplicates_dropped == 1

    def test_self_loops_dropped_and_counted(self):
        g, report = parse_edge_list("# c\n5 5\n5 6\n")
        assert g.node_count == 2
        assert g.edge_count == 1
        assert report.self_loops_dropped == 1

    def test_empty_input_is_empty_graph(self):
        g, report = parse_edge_list("")
        assert g.node_count == 0
        assert g.edge_count == 0
        assert report.lines_read == 0

    def test_comment_prefixes_and_blank_lines(self):
        g, report = parse_edge_list("# a\n% b\n\n0 1\n")
        assert g.edge_count == 1
        assert report.lines_read == 4

    def test_extra_columns_ignored(self):
        g, _ = parse_edge_list("0 1 1462320000 0.5\n1 2 1462320001 0.7\n")
        assert g.node_count == 3
        assert g.edge_count == 2

    def test_comma_separated(self):
        g, _ = parse_edge_list("0,1\n1,2,1462320000\n")
        assert g.edge_count == 2

    def test_malformed_token_reports_line_number(self):
        with pytest.raises(ParseError) as info:
            parse_edge_list("0 1\nx 2\n")
        assert info.value.line_number == 2

    def test_negative_id_rejected(self):
        with pytest.raises(ParseError):
            parse_edge_list("0 -1\n")

    def test_single_column_rejected(self):
        with pytest.raises(ParseError):
            parse_edge_list("7\n")

    def test_labels_remapped_dense(self):
        g, report = parse_edge_list("100 200\n200 350\n")
        assert g.node_count == 3
        assert set(g.edges()) == {(0, 1), (1, 2)}
        assert report.nodes == 3 and report.edges == 2

    def test_line_permutation_gives_identical_graph(self):
        lines = [f"{u} {v}" for u, v in er_graph(18, 0.3, seed=5).edges()]
        g1, _ = parse_edge_list("\n".join(lines))
        shuffled = lines[:]
        random.Random(3).shuffle(shuffled)
        g2, _ = parse_edge_list("\n".join(shuffled))
        assert g1 == g2
        assert g1.degrees() == g2.degrees()
        assert list(census(g1, "s").factors) == list(census(g2, "s").factors)

    def test_round_trip(self):
        g = er_graph(25, 0.25, seed=9)
        buffer = io.StringIO()
        write_edge_list(g, buffer)
        g2, report = parse_edge_list(buffer.getvalue())
        assert report.duplicates_dropped == 0 and report.self_loops_dropped == 0
        assert (g2.node_count, g2.edge_count) == (g.node_count, g.edge_count)
        assert g2.degrees() == g.degrees()


class TestGraphType:
    def test_from_edges_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph.from_edges([(1, 1)])

    def test_from_edges_rejects_duplicate(self):
        with pytest.raises(ValueError):
            Graph.from_edges([(0, 1), (1, 0)])

    def test_neighbors_sorted_and_symmetric(self):
        g = er_graph(20, 0.4, seed=2)
        for v in range(g.node_count):
            nb = g.neighbors(v)
            assert list(nb) == sorted(nb)
            for u in nb:
                assert v in g.neighbors(u)

    def test_edge_count_is_half_degree_sum(self):
        g = er_graph(20, 0.4, seed=2)
        assert sum(g.degrees()) == 2 * g.edge_count


class TestClustering:
    def test_triangle_vertex(self):
        g = complete_graph(3)
        for v in range(3):
            assert local_clustering_coefficient(g, v) == 1.0

    def test_path_middle(self):
        assert local_clustering_coefficient(path_graph(3), 1) == 0.0

    def test_hub_with_one_neighbor_edge(self):
        g = Graph.from_edges([(0, 1), (0, 2), (0, 3), (1, 2)])
        assert local_clustering_coefficient(g, 0) == pytest.approx(1 / 3)

    def test_degree_one_is_zero(self):
        assert local_clustering_coefficient(path_graph(3), 0) == 0.0

    def test_invalid_node(self):
        with pytest.raises(ValueError):
            local_clustering_coefficient(path_graph(3), 7)

    def test_average_k3(self):
        assert average_clustering_coefficient(complete_graph(3)) == 1.0

    def test_average_path(self):
        assert average_clustering_coefficient(path_graph(3)) == 0.0

    def test_average_empty_graph(self):
        with pytest.raises(ValueError):
            average_clustering_coefficient(Graph([]))

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_coefficients_in_unit_interval(self, seed):
        g = er_graph(30, 0.3, seed=seed)
        for v in range(g.node_count):
            assert 0.0 <= local_clustering_coefficient(g, v) <= 1.0
        assert 0.0 <= average_clustering_coefficient(g) <= 1.0
