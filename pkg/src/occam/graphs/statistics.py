"""Sufficient statistics of observed graphs."""

import numpy as np

from occam.core.exceptions import DomainError
from occam.graphs.models import BlockAssignment, BlockStats, Graph


def edge_indicators(g: Graph) -> np.ndarray:
    """Flattened edge indicators a_i in canonical order.

    The order is row-major over the upper triangle, diagonal included
    iff loops are allowed.
    """
    rows, cols = np.triu_indices(g.n_v, k=0 if g.loops_allowed else 1)
    return g.adjacency[rows, cols].astype(np.int64)


def edge_count(g: Graph) -> tuple[int, int]:
    """Possible and observed edge counts.

    Args:
        g: Observed graph.

    Returns:
        Tuple (n, s) of admissible pairs and present edges.
    """
    diagonal = int(g.adjacency.diagonal().sum(dtype=np.int64))
    total = int(g.adjacency.sum(dtype=np.int64))
    s = (total - diagonal) // 2 + (diagonal if g.loops_allowed else 0)
    return g.possible_edges, s


def block_stats(g: Graph, assignment: BlockAssignment) -> BlockStats:
    """Edge and non-edge counts per unordered block pair.

    Cross-block pairs (k != k') count every vertex pair once; within-block
    pairs include the diagonal only when the graph allows self-loops.

    Args:
        g: Observed graph.
        assignment: Block membership covering every vertex.

    Returns:
        The block statistics.

    Raises:
        DomainError: If the assignment does not cover the graph's vertices.
    """
    if assignment.n_v != g.n_v:
        raise DomainError(
            f"assignment covers {assignment.n_v} vertices, graph has {g.n_v}"
        )

    z = assignment.indicator()
    adjacency = g.adjacency.astype(np.int64)
    between = z.T @ adjacency @ z
    diagonal = z.T @ adjacency.diagonal()

    s = between.copy()
    # within-block totals count each off-diagonal edge twice
    within = (np.diag(between) - diagonal) // 2
    if g.loops_allowed:
        within = within + diagonal
    np.fill_diagonal(s, within)

    return BlockStats.from_counts(s, assignment.sizes, loops_allowed=g.loops_allowed)
