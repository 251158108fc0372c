"""Tests for the rank-1 adjacency spectral embedding."""

import numpy as np
import pytest
from pydantic import ValidationError

from occam.core.exceptions import DegenerateEmbeddingError, DomainError
from occam.core.membership.config import PowerIterationConfig
from occam.core.membership.embedding import ase_rank1, spectral_embedding_rank1
from occam.core.membership.models import Embedding
from occam.graphs.models import BlockAssignment, Graph
from occam.graphs.sampling import sample_er, sample_sbm_rank1


class TestSpectralEmbedding:
    """Tests for spectral_embedding_rank1 function."""

    def test_exact_rank_one_recovers_positions(self) -> None:
        x = np.array([0.2, 0.5, 0.9, 0.4])
        embedding = spectral_embedding_rank1(np.outer(x, x))

        np.testing.assert_allclose(embedding.values, x, atol=1e-10)
        assert embedding.sigma == pytest.approx(x @ x)
        assert embedding.converged

    def test_sign_convention(self) -> None:
        """-x x^T has the same embedding up to the sign fix."""
        x = np.array([0.3, 0.6, 0.1])
        embedding = spectral_embedding_rank1(-np.outer(x, x))
        assert embedding.values.sum() >= 0
        np.testing.assert_allclose(np.abs(embedding.values), x, atol=1e-10)

    def test_residual_at_termination(self, rng: np.random.Generator) -> None:
        g = sample_er(80, 0.4, seed=rng)
        embedding = ase_rank1(g)
        a = g.adjacency.astype(np.float64)
        v = embedding.values / np.linalg.norm(embedding.values)
        sigma_sq = embedding.sigma**2

        assert embedding.residual <= 1e-10
        assert np.linalg.norm(a.T @ a @ v - sigma_sq * v) <= 1e-8 * sigma_sq

    def test_not_square(self) -> None:
        with pytest.raises(DomainError, match="square"):
            spectral_embedding_rank1(np.ones((2, 3)))

    def test_not_symmetric(self) -> None:
        with pytest.raises(DomainError, match="symmetric"):
            spectral_embedding_rank1(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_zero_matrix(self) -> None:
        with pytest.raises(DegenerateEmbeddingError):
            spectral_embedding_rank1(np.zeros((3, 3)))

    def test_iteration_limit_reported(self, rng: np.random.Generator) -> None:
        g = sample_er(60, 0.5, seed=rng)
        embedding = ase_rank1(g, PowerIterationConfig(max_iter=1))
        assert embedding.iterations == 1
        assert not embedding.converged


class TestAseRank1:
    """Tests for ase_rank1 on sampled graphs."""

    def test_empty_graph(self) -> None:
        with pytest.raises(DegenerateEmbeddingError, match="without edges"):
            ase_rank1(Graph.empty(5))

    @pytest.mark.parametrize("p", [0.3, 0.5])
    def test_er_concentrates_at_root_p(self, p: float) -> None:
        embedding = ase_rank1(sample_er(500, p, seed=11))
        assert abs(embedding.values.mean() - np.sqrt(p)) < 0.02
        assert embedding.values.std() < 0.05

    def test_two_block_modes(self) -> None:
        assignment = BlockAssignment.balanced(200, 2)
        g = sample_sbm_rank1((0.2, 0.9), assignment, seed=5)
        values = ase_rank1(g).values

        assert np.median(values[:100]) == pytest.approx(0.2, abs=0.05)
        assert np.median(values[100:]) == pytest.approx(0.9, abs=0.05)

    def test_deterministic(self, rng: np.random.Generator) -> None:
        g = sample_er(50, 0.3, seed=rng)
        assert ase_rank1(g) == ase_rank1(g)


class TestEmbeddingModel:
    """Tests for the Embedding model and its config."""

    def test_values_read_only(self) -> None:
        embedding = Embedding(
            values=[0.1, 0.2], sigma=1.0, residual=0.0, iterations=1, converged=True
        )
        assert embedding.n_v == 2
        with pytest.raises(ValueError):
            embedding.values[0] = 1.0

    def test_sigma_positive(self) -> None:
        with pytest.raises(ValidationError):
            Embedding(
                values=[0.1], sigma=0.0, residual=0.0, iterations=1, converged=True
            )

    @pytest.mark.parametrize("kwargs", [{"tol": 0.0}, {"max_iter": 0}])
    def test_config_validation(self, kwargs: dict) -> None:
        with pytest.raises(ValueError):
            PowerIterationConfig(**kwargs)
