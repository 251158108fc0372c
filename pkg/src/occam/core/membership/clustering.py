"""Exact one-dimensional K-means.

Optimal clusters of points on a line are contiguous in sorted order, so
the minimum within-cluster sum of squares is found exactly by dynamic
programming over segment boundaries of the sorted distinct values.
"""

import numpy as np

from occam.core.exceptions import DomainError
from occam.core.logging import get_logger
from occam.core.membership.config import PowerIterationConfig
from occam.core.membership.embedding import ase_rank1
from occam.graphs.models import BlockAssignment, Graph

logger = get_logger("occam.membership.clustering")


def _segment_costs(
    weights: np.ndarray, first: np.ndarray, second: np.ndarray, end: int
) -> np.ndarray:
    """Weighted SSE of segments [i, end) for every start i < end."""
    w = weights[end] - weights[:end]
    s1 = first[end] - first[:end]
    s2 = second[end] - second[:end]
    return np.maximum(s2 - s1 * s1 / w, 0.0)


def kmeans_1d_segments(values: np.ndarray, k: int) -> tuple[np.ndarray, float]:
    """Optimal split of the sorted distinct values into k contiguous segments.

    Args:
        values: Points on the line.
        k: Number of clusters.

    Returns:
        Tuple of (segment index of every point, minimal within-cluster SSE).
        Segments are numbered from 0 in ascending order of their centroid.

    Raises:
        DomainError: If k < 1 or k exceeds the number of distinct values.
    """
    points = np.asarray(values, dtype=np.float64).ravel()
    distinct, inverse, counts = np.unique(points, return_inverse=True, return_counts=True)
    m = distinct.size
    if k < 1:
        raise DomainError(f"K must be at least 1, got {k}")
    if k > m:
        raise DomainError(f"K={k} exceeds the {m} distinct values")

    centered = distinct - np.average(distinct, weights=counts)
    weights = np.concatenate([[0.0], np.cumsum(counts, dtype=np.float64)])
    first = np.concatenate([[0.0], np.cumsum(counts * centered)])
    second = np.concatenate([[0.0], np.cumsum(counts * centered * centered)])

    cost = np.full((k + 1, m + 1), np.inf)
    start = np.zeros((k + 1, m + 1), dtype=np.int64)
    cost[0, 0] = 0.0
    for segments in range(1, k + 1):
        for end in range(segments, m - (k - segments) + 1):
            totals = cost[segments - 1, :end] + _segment_costs(weights, first, second, end)
            best = int(np.argmin(totals))
            cost[segments, end] = totals[best]
            start[segments, end] = best

    boundaries = [m]
    for segments in range(k, 0, -1):
        boundaries.append(int(start[segments, boundaries[-1]]))
    boundaries.reverse()

    segment_of_distinct = np.empty(m, dtype=np.int64)
    for index in range(k):
        segment_of_distinct[boundaries[index] : boundaries[index + 1]] = index
    return segment_of_distinct[inverse], float(cost[k, m])


def cluster_1d(values: np.ndarray, k: int) -> BlockAssignment:
    """Globally optimal 1-D K-means as a block assignment.

    Blocks are labelled 1..k in ascending order of their centroid.

    Raises:
        DomainError: If k exceeds the number of distinct values.
    """
    segments, sse = kmeans_1d_segments(values, k)
    logger.debug(f"1-D K-means with K={k}: SSE {sse:.6g}")
    return BlockAssignment(labels=segments + 1, k=k)


def estimate_membership(
    g: Graph,
    k: int,
    config: PowerIterationConfig | None = None,
) -> BlockAssignment:
    """Estimate block membership by clustering the rank-1 spectral embedding.

    Args:
        g: Observed graph.
        k: Number of blocks.
        config: Power iteration settings; its seed fixes the start vector.

    Returns:
        The estimated assignment.

    Raises:
        DegenerateEmbeddingError: If K > 1 and the graph has no edges.
        DomainError: If the embedding has fewer than K distinct values.
    """
    if k == 1:
        return BlockAssignment.single_block(g.n_v)
    return cluster_1d(ase_rank1(g, config).values, k)
