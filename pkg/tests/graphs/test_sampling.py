"""Tests for the random graph samplers."""

import numpy as np
import pytest
from scipy import stats

from occam.core.exceptions import DomainError
from occam.graphs.models import BlockAssignment, Graph
from occam.graphs.sampling import (
    make_rng,
    replicate_seed,
    sample_er,
    sample_ie,
    sample_sbm_rank1,
    sample_uniform_probabilities,
)
from occam.graphs.statistics import block_stats, edge_count


def _mean_edges(graphs: list[Graph]) -> float:
    return float(np.mean([edge_count(g)[1] for g in graphs]))


class TestSeeds:
    """Tests for seeding helpers."""

    def test_replicate_seed_is_xor(self) -> None:
        """Replicate seeds are base XOR index."""
        assert replicate_seed(5, 3) == 6
        assert replicate_seed(0, 41) == 41
        assert replicate_seed(2**64 + 1, 0) == 1

    def test_make_rng_passes_generators_through(self) -> None:
        """An existing generator is returned unchanged."""
        rng = make_rng(7)
        assert make_rng(rng) is rng

    def test_philox_stream_depends_on_seed(self) -> None:
        """Different seeds give different streams."""
        assert make_rng(1).random() != make_rng(2).random()


class TestSampleEr:
    """Tests for sample_er function."""

    def test_deterministic_given_seed(self) -> None:
        """The same seed gives the same graph."""
        assert sample_er(30, 0.4, seed=11) == sample_er(30, 0.4, seed=11)
        assert sample_er(30, 0.4, seed=11) != sample_er(30, 0.4, seed=12)

    @pytest.mark.parametrize("loops_allowed", [True, False])
    def test_density_concentrates(self, loops_allowed: bool) -> None:
        """The edge density of a large graph is within 4 sigma of p."""
        g = sample_er(300, 0.9, loops_allowed=loops_allowed, seed=3)
        n, s = edge_count(g)
        sigma = np.sqrt(0.9 * 0.1 / n)
        assert abs(s / n - 0.9) < 4 * sigma

    def test_small_graph_mean_density(self) -> None:
        """Mean density over many 3-vertex samples is close to p."""
        graphs = [sample_er(3, 0.9, seed=i) for i in range(2000)]
        density = _mean_edges(graphs) / 6
        assert density == pytest.approx(0.9, abs=4 * np.sqrt(0.09 / 12000))

    def test_single_vertex_with_loop(self) -> None:
        """n_v = 1 with loops draws a single self-loop indicator."""
        draws = {int(sample_er(1, 0.5, seed=i).adjacency[0, 0]) for i in range(50)}
        assert draws == {0, 1}

    def test_no_loops_convention(self) -> None:
        """Without loops the diagonal stays empty."""
        g = sample_er(20, 0.99, loops_allowed=False, seed=0)
        assert not g.adjacency.diagonal().any()
        assert not g.loops_allowed

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
    def test_invalid_probability(self, p: float) -> None:
        """p must lie strictly inside (0, 1)."""
        with pytest.raises(DomainError, match="p must lie in"):
            sample_er(5, p)

    def test_invalid_size(self) -> None:
        """At least one vertex is required."""
        with pytest.raises(DomainError, match="n_v must be positive"):
            sample_er(0, 0.5)


class TestSampleIe:
    """Tests for sample_ie function."""

    def test_constant_matrix_matches_er(self) -> None:
        """A constant P reproduces ER edge counts in distribution."""
        p = np.full((40, 40), 0.3)
        ie = [sample_ie(p, seed=i) for i in range(200)]
        er = [sample_er(40, 0.3, seed=10_000 + i) for i in range(200)]
        sigma = np.sqrt(820 * 0.3 * 0.7 / 200)
        assert abs(_mean_edges(ie) - _mean_edges(er)) < 5 * sigma

    def test_entry_frequency(self) -> None:
        """A single entry is present with its own probability."""
        p = np.full((2, 2), 0.5)
        p[0, 1] = p[1, 0] = 0.2
        hits = np.mean([sample_ie(p, seed=i).adjacency[0, 1] for i in range(4000)])
        assert hits == pytest.approx(0.2, abs=4 * np.sqrt(0.16 / 4000))

    def test_asymmetric_rejected(self) -> None:
        """P must be symmetric."""
        p = np.array([[0.5, 0.2], [0.3, 0.5]])
        with pytest.raises(DomainError, match="symmetric"):
            sample_ie(p)

    def test_entry_outside_unit_interval_rejected(self) -> None:
        """Admissible entries must lie in (0, 1)."""
        p = np.array([[0.5, 1.0], [1.0, 0.5]])
        with pytest.raises(DomainError, match=r"\(0, 1\)"):
            sample_ie(p)

    def test_diagonal_ignored_without_loops(self) -> None:
        """Diagonal entries do not matter when loops are excluded."""
        p = np.array([[0.0, 0.5], [0.5, 1.0]])
        g = sample_ie(p, loops_allowed=False, seed=1)
        assert not g.adjacency.diagonal().any()

    def test_uniform_probabilities(self) -> None:
        """Random P is symmetric with entries strictly inside (0, 1)."""
        p = sample_uniform_probabilities(50, seed=4)
        np.testing.assert_array_equal(p, p.T)
        assert ((p > 0) & (p < 1)).all()
        np.testing.assert_array_equal(p, sample_uniform_probabilities(50, seed=4))


class TestSampleSbmRank1:
    """Tests for sample_sbm_rank1 function."""

    def test_block_densities(self) -> None:
        """Within and cross-block densities approach x_k x_k'."""
        assignment = BlockAssignment.balanced(400, 2)
        g = sample_sbm_rank1(np.array([0.2, 0.9]), assignment, seed=8)
        stats = block_stats(g, assignment)
        density = stats.s / stats.exposures

        assert density[0, 0] == pytest.approx(0.04, abs=0.01)
        assert density[0, 1] == pytest.approx(0.18, abs=0.01)
        assert density[1, 1] == pytest.approx(0.81, abs=0.01)

    def test_constant_positions_match_er(self) -> None:
        """x = (c, c) behaves like ER(c^2)."""
        assignment = BlockAssignment.balanced(60, 2)
        sbm = [sample_sbm_rank1([0.6, 0.6], assignment, seed=i) for i in range(200)]
        er = [sample_er(60, 0.36, seed=50_000 + i) for i in range(200)]
        sigma = np.sqrt(1830 * 0.36 * 0.64 / 200)
        assert abs(_mean_edges(sbm) - _mean_edges(er)) < 5 * sigma

    def test_single_block(self) -> None:
        """K = 1 is ER(x_1^2)."""
        assignment = BlockAssignment.single_block(300)
        g = sample_sbm_rank1([0.5], assignment, seed=2)
        n, s = edge_count(g)
        assert s / n == pytest.approx(0.25, abs=4 * np.sqrt(0.25 * 0.75 / n))

    def test_wrong_length_rejected(self) -> None:
        """One latent position per block."""
        with pytest.raises(DomainError, match="expected 2 latent positions"):
            sample_sbm_rank1([0.5], BlockAssignment.balanced(4, 2))

    def test_position_outside_unit_interval_rejected(self) -> None:
        """Positions must lie in (0, 1)."""
        with pytest.raises(DomainError, match="x_k must lie in"):
            sample_sbm_rank1([0.5, 1.0], BlockAssignment.balanced(4, 2))

    def test_deterministic(self) -> None:
        """The same seed gives the same graph."""
        assignment = BlockAssignment.balanced(30, 3)
        x = [0.3, 0.6, 0.9]
        assert sample_sbm_rank1(x, assignment, seed=5) == sample_sbm_rank1(
            x, assignment, seed=5
        )


HISTOGRAM_REPLICATES = 10_000


def _binomial_fit_pvalue(graphs: list[Graph], p: float) -> float:
    """Chi-square p-value of the edge-count histogram against Binomial(n, p).

    Bins expecting fewer than five graphs are pooled.
    """
    n = graphs[0].possible_edges
    counts = np.array([edge_count(g)[1] for g in graphs])
    observed = np.bincount(counts, minlength=n + 1)
    expected = stats.binom.pmf(np.arange(n + 1), n, p) * len(graphs)
    keep = expected >= 5
    observed, expected = observed[keep], expected[keep]
    if not keep.all():
        observed = np.append(observed, len(graphs) - observed.sum())
        expected = np.append(expected, len(graphs) - expected.sum())
    return float(stats.chisquare(observed, expected).pvalue)


@pytest.mark.slow
class TestEdgeCountHistograms:
    """Edge counts of the equal-probability cases follow one binomial law."""

    def test_er(self) -> None:
        graphs = [sample_er(10, 0.36, seed=i) for i in range(HISTOGRAM_REPLICATES)]
        assert _binomial_fit_pvalue(graphs, 0.36) > 1e-4

    def test_constant_matrix_ie(self) -> None:
        p = np.full((10, 10), 0.36)
        graphs = [
            sample_ie(p, seed=20_000 + i) for i in range(HISTOGRAM_REPLICATES)
        ]
        assert _binomial_fit_pvalue(graphs, 0.36) > 1e-4

    def test_equal_positions_blockmodel(self) -> None:
        assignment = BlockAssignment.balanced(10, 2)
        graphs = [
            sample_sbm_rank1([0.6, 0.6], assignment, seed=40_000 + i)
            for i in range(HISTOGRAM_REPLICATES)
        ]
        assert _binomial_fit_pvalue(graphs, 0.36) > 1e-4

    def test_without_loops(self) -> None:
        graphs = [
            sample_er(10, 0.36, loops_allowed=False, seed=60_000 + i)
            for i in range(HISTOGRAM_REPLICATES)
        ]
        assert graphs[0].possible_edges == 45
        assert _binomial_fit_pvalue(graphs, 0.36) > 1e-4
