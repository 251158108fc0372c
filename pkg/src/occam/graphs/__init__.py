"""Graph representation, samplers, statistics and file I/O.

This package holds the observed-data side of model selection: immutable
graphs and block structures, the three generative samplers, sufficient
statistics and the edge-list/CSV formats.
"""

from occam.graphs.io import (
    detect_format,
    load_graph,
    load_membership,
    save_graph,
)
from occam.graphs.models import (
    BlockAssignment,
    BlockStats,
    Graph,
    GraphFormat,
    possible_edges,
)
from occam.graphs.sampling import (
    make_rng,
    replicate_seed,
    sample_er,
    sample_ie,
    sample_sbm_rank1,
    sample_uniform_probabilities,
)
from occam.graphs.statistics import block_stats, edge_count, edge_indicators

__all__ = [
    # Models
    "BlockAssignment",
    "BlockStats",
    "Graph",
    "GraphFormat",
    "possible_edges",
    # Sampling
    "make_rng",
    "replicate_seed",
    "sample_er",
    "sample_ie",
    "sample_sbm_rank1",
    "sample_uniform_probabilities",
    # Statistics
    "block_stats",
    "edge_count",
    "edge_indicators",
    # I/O
    "detect_format",
    "load_graph",
    "load_membership",
    "save_graph",
]
