"""Rank-1 adjacency spectral embedding by power iteration.

The leading eigenpair (sigma^2, u) of A^T A is found by power iteration
from a seeded positive start vector; the embedding is u * sqrt(sigma)
with the sign fixed so that the coordinates sum to a nonnegative value.
"""

import numpy as np

from occam.core.exceptions import DegenerateEmbeddingError, DomainError
from occam.core.logging import get_logger
from occam.core.membership.config import PowerIterationConfig
from occam.core.membership.models import Embedding
from occam.graphs.models import Graph
from occam.graphs.sampling import make_rng

logger = get_logger("occam.membership.embedding")


def spectral_embedding_rank1(
    matrix: np.ndarray,
    config: PowerIterationConfig | None = None,
) -> Embedding:
    """Rank-1 spectral embedding of a symmetric real matrix.

    Args:
        matrix: Symmetric matrix, usually an adjacency matrix.
        config: Power iteration settings.

    Returns:
        The embedding with its singular value and convergence record.

    Raises:
        DomainError: If the matrix is not square and symmetric.
        DegenerateEmbeddingError: If the matrix is zero.
    """
    config = config or PowerIterationConfig()
    a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"matrix must be square, got shape {a.shape}")
    if not np.allclose(a, a.T):
        raise DomainError("matrix must be symmetric")
    if not a.any():
        raise DegenerateEmbeddingError("cannot embed a graph without edges")

    rng = make_rng(config.seed)
    v = rng.uniform(0.5, 1.5, size=a.shape[0])
    v /= np.linalg.norm(v)

    sigma_sq = 0.0
    residual = np.inf
    iterations = 0
    while iterations < config.max_iter:
        av = a @ v
        sigma_sq = float(av @ av)
        if sigma_sq == 0.0:
            raise DegenerateEmbeddingError("start vector lies in the null space")
        w = a @ av
        residual = float(np.linalg.norm(w - sigma_sq * v)) / sigma_sq
        iterations += 1
        if residual <= config.tol:
            break
        v = w / np.linalg.norm(w)

    converged = residual <= config.tol
    if not converged:
        logger.warning(
            f"Power iteration stopped after {iterations} iterations "
            f"(relative residual {residual:.3e})"
        )

    sigma = float(np.sqrt(sigma_sq))
    values = v * np.sqrt(sigma)
    if values.sum() < 0:
        values = -values
    return Embedding(
        values=values,
        sigma=sigma,
        residual=residual,
        iterations=iterations,
        converged=converged,
    )


def ase_rank1(g: Graph, config: PowerIterationConfig | None = None) -> Embedding:
    """Rank-1 adjacency spectral embedding of a graph.

    Raises:
        DegenerateEmbeddingError: If the graph has no edges.
    """
    if g.is_empty:
        raise DegenerateEmbeddingError("cannot embed a graph without edges")
    return spectral_embedding_rank1(g.adjacency, config)
