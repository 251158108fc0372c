"""Tests for sufficient statistics of graphs."""

import numpy as np
import pytest

from occam.core.exceptions import DomainError
from occam.graphs.models import BlockAssignment, Graph
from occam.graphs.sampling import sample_er
from occam.graphs.statistics import block_stats, edge_count, edge_indicators


class TestEdgeCount:
    """Tests for edge_count function."""

    def test_complete_with_loops(self) -> None:
        """All six pairs of a 3-vertex graph with loops are present."""
        assert edge_count(Graph.complete(3, loops_allowed=True)) == (6, 6)

    def test_empty_without_loops(self) -> None:
        """C(4, 2) possible pairs, none present."""
        assert edge_count(Graph.empty(4, loops_allowed=False)) == (6, 0)

    def test_hand_counted(self, hand_graph: Graph) -> None:
        """Edges 1-1, 1-2, 2-3, 3-3 give four of six pairs."""
        assert edge_count(hand_graph) == (6, 4)


class TestEdgeIndicators:
    """Tests for edge_indicators function."""

    def test_row_major_upper_triangle(self, hand_graph: Graph) -> None:
        """Order is (1,1), (1,2), (1,3), (2,2), (2,3), (3,3)."""
        np.testing.assert_array_equal(edge_indicators(hand_graph), [1, 1, 0, 0, 1, 1])

    def test_without_loops(self, hand_graph: Graph) -> None:
        """The diagonal is skipped without loops."""
        np.testing.assert_array_equal(
            edge_indicators(hand_graph.without_loops()), [1, 0, 1]
        )


class TestBlockStats:
    """Tests for block_stats function."""

    def test_hand_counted(
        self, hand_graph: Graph, hand_assignment: BlockAssignment
    ) -> None:
        """Blocks {1, 2}, {3} on the hand graph."""
        stats = block_stats(hand_graph, hand_assignment)

        np.testing.assert_array_equal(stats.s, [[2, 1], [1, 1]])
        np.testing.assert_array_equal(stats.o, [[1, 1], [1, 0]])

    def test_empty_graph(self) -> None:
        """S is zero and O holds the pair counts."""
        assignment = BlockAssignment.balanced(5, 2)
        stats = block_stats(Graph.empty(5, loops_allowed=False), assignment)

        assert not stats.s.any()
        np.testing.assert_array_equal(stats.o, [[3, 6], [6, 1]])

    def test_single_block_reduces_to_edge_count(self) -> None:
        """With K = 1, S_11 = s and O_11 = n - s."""
        g = sample_er(25, 0.3, seed=9)
        n, s = edge_count(g)
        stats = block_stats(g, BlockAssignment.single_block(25))

        assert stats.s[0, 0] == s
        assert stats.o[0, 0] == n - s

    @pytest.mark.parametrize("loops_allowed", [True, False])
    def test_totals_match_edge_count(self, loops_allowed: bool) -> None:
        """Summing S and S + O over k <= k' recovers s and n."""
        rng = np.random.default_rng(1)
        for seed in range(10):
            g = sample_er(30, 0.4, loops_allowed=loops_allowed, seed=seed)
            labels = rng.permutation(np.arange(30) % 4 + 1)
            stats = block_stats(g, BlockAssignment(labels=labels))
            n, s = edge_count(g)

            assert stats.edge_total == s
            assert stats.pair_total == n

    def test_unordered_labels(self, hand_graph: Graph) -> None:
        """Block labels need not be contiguous vertex ranges."""
        order = np.array([2, 0, 1])
        stats = block_stats(
            hand_graph.permuted(order), BlockAssignment(labels=[2, 1, 1])
        )
        np.testing.assert_array_equal(stats.s, [[2, 1], [1, 1]])

    def test_size_mismatch(self, hand_graph: Graph) -> None:
        """The assignment must cover every vertex."""
        with pytest.raises(DomainError, match="covers 2 vertices"):
            block_stats(hand_graph, BlockAssignment(labels=[1, 2]))
