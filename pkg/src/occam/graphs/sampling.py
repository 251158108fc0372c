"""Random graph samplers.

Samplers for the Erdos-Renyi, independent-edge and rank-1 blockmodel
generative models. Every sampler is deterministic given its seed and
draws from a counter-based Philox generator, so replicates seeded with
``replicate_seed`` can run in any order or in parallel.
"""

import numpy as np

from occam.core.exceptions import DomainError
from occam.graphs.models import BlockAssignment, Graph

SEED_MASK = (1 << 64) - 1

SeedLike = int | np.random.Generator


def make_rng(seed: SeedLike) -> np.random.Generator:
    """Return a Philox-backed generator for a 64-bit seed.

    Args:
        seed: Integer seed (reduced modulo 2**64) or an existing generator,
            which is returned unchanged.

    Returns:
        A numpy Generator.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(int(seed) & SEED_MASK))


def replicate_seed(base_seed: int, index: int) -> int:
    """Seed of a sweep replicate: ``base XOR index`` on 64 bits."""
    return (int(base_seed) ^ int(index)) & SEED_MASK


def _upper_indices(n_v: int, loops_allowed: bool) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n_v, k=0 if loops_allowed else 1)


def _draw(
    probabilities: np.ndarray,
    n_v: int,
    loops_allowed: bool,
    rng: np.random.Generator,
) -> Graph:
    rows, cols = _upper_indices(n_v, loops_allowed)
    present = (rng.random(rows.size) < probabilities).astype(np.uint8)
    adjacency = np.zeros((n_v, n_v), dtype=np.uint8)
    adjacency[rows, cols] = present
    adjacency[cols, rows] = present
    return Graph(n_v=n_v, adjacency=adjacency, loops_allowed=loops_allowed)


def _check_probability(p: float, name: str = "p") -> None:
    if not 0.0 < p < 1.0:
        raise DomainError(f"{name} must lie in (0, 1), got {p}")


def sample_er(
    n_v: int,
    p: float,
    loops_allowed: bool = True,
    seed: SeedLike = 0,
) -> Graph:
    """Sample an Erdos-Renyi graph.

    Args:
        n_v: Vertex count.
        p: Common edge probability.
        loops_allowed: Whether diagonal pairs are drawn.
        seed: RNG seed or generator.

    Returns:
        The sampled graph.

    Raises:
        DomainError: If ``n_v < 1`` or ``p`` is outside (0, 1).
    """
    if n_v < 1:
        raise DomainError(f"n_v must be positive, got {n_v}")
    _check_probability(p)
    return _draw(np.float64(p), n_v, loops_allowed, make_rng(seed))


def sample_ie(
    probabilities: np.ndarray,
    loops_allowed: bool = True,
    seed: SeedLike = 0,
) -> Graph:
    """Sample an independent-edge graph.

    Args:
        probabilities: Symmetric matrix P of edge probabilities. Diagonal
            entries are ignored when loops are not allowed.
        loops_allowed: Whether diagonal pairs are drawn.
        seed: RNG seed or generator.

    Returns:
        The sampled graph.

    Raises:
        DomainError: If P is not square and symmetric, or an admissible
            entry lies outside (0, 1).
    """
    matrix = np.asarray(probabilities, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.size == 0:
        raise DomainError("P must be a nonempty square matrix")
    if not np.array_equal(matrix, matrix.T):
        raise DomainError("P must be symmetric")

    n_v = matrix.shape[0]
    rows, cols = _upper_indices(n_v, loops_allowed)
    admissible = matrix[rows, cols]
    if not ((admissible > 0.0) & (admissible < 1.0)).all():
        raise DomainError("P entries must lie in (0, 1)")
    return _draw(admissible, n_v, loops_allowed, make_rng(seed))


def sample_sbm_rank1(
    x: np.ndarray,
    assignment: BlockAssignment,
    loops_allowed: bool = True,
    seed: SeedLike = 0,
) -> Graph:
    """Sample a rank-1 K-block stochastic blockmodel graph.

    Edge (i, j) is present with probability ``x[label(i)] * x[label(j)]``.

    Args:
        x: Latent positions, one per block, each in (0, 1).
        assignment: Block membership of the vertices.
        loops_allowed: Whether diagonal pairs are drawn.
        seed: RNG seed or generator.

    Returns:
        The sampled graph.

    Raises:
        DomainError: If ``len(x) != K`` or some ``x_k`` is outside (0, 1).
    """
    positions = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if positions.size != assignment.k:
        raise DomainError(
            f"expected {assignment.k} latent positions, got {positions.size}"
        )
    for value in positions:
        _check_probability(float(value), "x_k")

    per_vertex = positions[assignment.labels - 1]
    rows, cols = _upper_indices(assignment.n_v, loops_allowed)
    return _draw(
        per_vertex[rows] * per_vertex[cols],
        assignment.n_v,
        loops_allowed,
        make_rng(seed),
    )


def sample_uniform_probabilities(
    n_v: int,
    seed: SeedLike = 0,
) -> np.ndarray:
    """Draw a symmetric probability matrix with i.i.d. uniform entries.

    Entries are kept strictly inside (0, 1).
    """
    rng = make_rng(seed)
    rows, cols = np.triu_indices(n_v, k=0)
    tiny = np.finfo(np.float64).tiny
    values = np.clip(rng.random(rows.size), tiny, np.nextafter(1.0, 0.0))
    matrix = np.zeros((n_v, n_v), dtype=np.float64)
    matrix[rows, cols] = values
    matrix[cols, rows] = values
    return matrix
