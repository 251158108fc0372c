"""Block membership estimation.

This module provides the rank-1 adjacency spectral embedding and exact
one-dimensional K-means used to estimate an unknown block assignment.
"""

from occam.core.membership.clustering import (
    cluster_1d,
    estimate_membership,
    kmeans_1d_segments,
)
from occam.core.membership.config import PowerIterationConfig
from occam.core.membership.embedding import ase_rank1, spectral_embedding_rank1
from occam.core.membership.models import Embedding

__all__ = [
    # Config
    "PowerIterationConfig",
    # Models
    "Embedding",
    # Embedding
    "ase_rank1",
    "spectral_embedding_rank1",
    # Clustering
    "cluster_1d",
    "estimate_membership",
    "kmeans_1d_segments",
]
