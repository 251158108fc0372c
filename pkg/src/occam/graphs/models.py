"""Pydantic models for graphs and block structure.

This module defines the immutable value types shared by every other
package: the observed graph, a block assignment of its vertices and the
block-pair sufficient statistics of the rank-1 blockmodel.
"""

from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


def _frozen_array(values: Any, dtype: type) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


def possible_edges(n_v: int, loops_allowed: bool) -> int:
    """Number of admissible vertex pairs.

    Args:
        n_v: Vertex count.
        loops_allowed: Whether self-loops count as possible edges.

    Returns:
        C(n_v, 2) + n_v with loops, C(n_v, 2) without.
    """
    pairs = n_v * (n_v - 1) // 2
    return pairs + n_v if loops_allowed else pairs


class GraphFormat(str, Enum):
    """On-disk graph formats."""

    EDGE_LIST = "edgelist"
    CSV = "csv"


class Graph(BaseModel):
    """An undirected, unweighted graph.

    Attributes:
        n_v: Number of vertices.
        adjacency: Read-only symmetric 0/1 matrix of shape (n_v, n_v).
        loops_allowed: Self-loop convention. When False the diagonal is
            zero and the number of possible edges is C(n_v, 2).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n_v: int = Field(..., ge=1)
    adjacency: np.ndarray
    loops_allowed: bool = True

    @field_validator("adjacency", mode="before")
    @classmethod
    def coerce_adjacency(cls, v: Any) -> np.ndarray:
        """Convert to a read-only uint8 matrix, rejecting non-binary input."""
        array = np.asarray(v)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if array.size and not np.isin(array, (0, 1)).all():
            raise ValueError("adjacency entries must be 0 or 1")
        return _frozen_array(array, np.uint8)

    @model_validator(mode="after")
    def check_invariants(self) -> "Graph":
        """Check shape, symmetry and the loop convention."""
        if self.adjacency.shape != (self.n_v, self.n_v):
            raise ValueError(
                f"adjacency shape {self.adjacency.shape} does not match n_v={self.n_v}"
            )
        if not np.array_equal(self.adjacency, self.adjacency.T):
            raise ValueError("adjacency must be symmetric")
        if not self.loops_allowed and self.adjacency.diagonal().any():
            raise ValueError("self-loops present but loops_allowed is false")
        return self

    @classmethod
    def from_edges(
        cls,
        n_v: int,
        edges: list[tuple[int, int]] | np.ndarray,
        loops_allowed: bool = True,
    ) -> "Graph":
        """Build a graph from 0-based undirected vertex pairs.

        Args:
            n_v: Vertex count.
            edges: Iterable of (i, j) pairs, 0-based.
            loops_allowed: Self-loop convention.

        Returns:
            The graph with those edges present.
        """
        adjacency = np.zeros((n_v, n_v), dtype=np.uint8)
        pairs = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if pairs.size:
            if pairs.min() < 0 or pairs.max() >= n_v:
                raise ValueError("edge endpoint out of range")
            adjacency[pairs[:, 0], pairs[:, 1]] = 1
            adjacency[pairs[:, 1], pairs[:, 0]] = 1
        return cls(n_v=n_v, adjacency=adjacency, loops_allowed=loops_allowed)

    @classmethod
    def complete(cls, n_v: int, loops_allowed: bool = True) -> "Graph":
        """Return the complete graph under the given loop convention."""
        adjacency = np.ones((n_v, n_v), dtype=np.uint8)
        if not loops_allowed:
            np.fill_diagonal(adjacency, 0)
        return cls(n_v=n_v, adjacency=adjacency, loops_allowed=loops_allowed)

    @classmethod
    def empty(cls, n_v: int, loops_allowed: bool = True) -> "Graph":
        """Return the graph with no edges."""
        return cls(
            n_v=n_v,
            adjacency=np.zeros((n_v, n_v), dtype=np.uint8),
            loops_allowed=loops_allowed,
        )

    @property
    def possible_edges(self) -> int:
        """Number of admissible vertex pairs n (or n* without loops)."""
        return possible_edges(self.n_v, self.loops_allowed)

    @property
    def is_empty(self) -> bool:
        """True when no admissible pair carries an edge."""
        return not self.adjacency.any()

    @property
    def is_complete(self) -> bool:
        """True when every admissible pair carries an edge."""
        return int(self.adjacency.sum(dtype=np.int64)) == (
            self.n_v * self.n_v if self.loops_allowed else self.n_v * (self.n_v - 1)
        )

    def without_loops(self) -> "Graph":
        """Apply the no-self-loop convention (diagonal cleared)."""
        adjacency = self.adjacency.copy()
        np.fill_diagonal(adjacency, 0)
        return Graph(n_v=self.n_v, adjacency=adjacency, loops_allowed=False)

    def permuted(self, order: np.ndarray) -> "Graph":
        """Relabel vertices so that new vertex ``i`` is old ``order[i]``."""
        order = np.asarray(order)
        return Graph(
            n_v=self.n_v,
            adjacency=self.adjacency[np.ix_(order, order)],
            loops_allowed=self.loops_allowed,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n_v == other.n_v
            and self.loops_allowed == other.loops_allowed
            and np.array_equal(self.adjacency, other.adjacency)
        )

    __hash__ = None  # type: ignore[assignment]


class BlockAssignment(BaseModel):
    """Partition of the vertices into K labelled blocks.

    Labels are 1-based and need not be contiguous vertex ranges, but every
    label in 1..K must be used by at least one vertex.

    Attributes:
        labels: Read-only integer vector of length n_v with values in 1..K.
        k: Number of blocks.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    labels: np.ndarray
    k: int = Field(..., ge=1)

    @model_validator(mode="before")
    @classmethod
    def infer_k(cls, data: Any) -> Any:
        """Default K to the largest label when omitted."""
        if isinstance(data, dict) and data.get("k") is None:
            labels = np.asarray(data.get("labels", []))
            data = {**data, "k": int(labels.max()) if labels.size else 0}
        return data

    @field_validator("labels", mode="before")
    @classmethod
    def coerce_labels(cls, v: Any) -> np.ndarray:
        """Convert labels to a read-only int64 vector."""
        array = np.asarray(v)
        if array.ndim != 1 or array.size == 0:
            raise ValueError("labels must be a nonempty vector")
        if not np.issubdtype(array.dtype, np.integer):
            if not np.all(np.equal(np.mod(array, 1), 0)):
                raise ValueError("labels must be integers")
        return _frozen_array(array, np.int64)

    @model_validator(mode="after")
    def check_labels(self) -> "BlockAssignment":
        """Every label must lie in 1..K and every block must be nonempty."""
        if self.labels.min() < 1 or self.labels.max() > self.k:
            raise ValueError(f"block labels must lie in 1..{self.k}")
        if np.unique(self.labels).size != self.k:
            raise ValueError("every block label in 1..K must appear at least once")
        return self

    @classmethod
    def single_block(cls, n_v: int) -> "BlockAssignment":
        """All vertices in block 1."""
        return cls(labels=np.ones(n_v, dtype=np.int64), k=1)

    @classmethod
    def balanced(cls, n_v: int, k: int) -> "BlockAssignment":
        """Contiguous, as-equal-as-possible blocks (first vertices in block 1)."""
        if not 1 <= k <= n_v:
            raise ValueError("k must lie in 1..n_v")
        labels = np.repeat(
            np.arange(1, k + 1), [len(c) for c in np.array_split(np.arange(n_v), k)]
        )
        return cls(labels=labels, k=k)

    @property
    def n_v(self) -> int:
        """Number of assigned vertices."""
        return int(self.labels.size)

    @property
    def sizes(self) -> np.ndarray:
        """Block sizes n_1..n_K."""
        return np.bincount(self.labels, minlength=self.k + 1)[1:]

    def indicator(self) -> np.ndarray:
        """Membership indicator matrix Z of shape (n_v, K)."""
        z = np.zeros((self.n_v, self.k), dtype=np.int64)
        z[np.arange(self.n_v), self.labels - 1] = 1
        return z

    def relabeled(self, mapping: dict[int, int] | np.ndarray) -> "BlockAssignment":
        """Apply a label permutation (old label -> new label)."""
        if isinstance(mapping, dict):
            lookup = np.zeros(self.k + 1, dtype=np.int64)
            for old, new in mapping.items():
                lookup[old] = new
        else:
            lookup = np.concatenate([[0], np.asarray(mapping, dtype=np.int64)])
        return BlockAssignment(labels=lookup[self.labels], k=self.k)

    def product(self, other: "BlockAssignment") -> "BlockAssignment":
        """Common refinement: one block per occupied pair of labels.

        Blocks are numbered in lexicographic order of (self, other) labels;
        empty combinations are skipped.
        """
        if other.n_v != self.n_v:
            raise ValueError(f"partitions cover {self.n_v} and {other.n_v} vertices")
        codes = (self.labels - 1) * other.k + (other.labels - 1)
        used, labels = np.unique(codes, return_inverse=True)
        return BlockAssignment(labels=labels + 1, k=int(used.size))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BlockAssignment):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.labels, other.labels)

    __hash__ = None  # type: ignore[assignment]


class BlockStats(BaseModel):
    """Per block-pair edge and non-edge counts.

    Attributes:
        s: Symmetric K x K matrix of edge counts S.
        o: Symmetric K x K matrix of non-edge counts O.
        sizes: Block sizes.
        loops_allowed: Self-loop convention used for the pair counts.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    s: np.ndarray
    o: np.ndarray
    sizes: np.ndarray
    loops_allowed: bool = True

    @field_validator("s", "o", "sizes", mode="before")
    @classmethod
    def coerce_counts(cls, v: Any) -> np.ndarray:
        """Convert counts to read-only int64 arrays."""
        array = np.atleast_1d(np.asarray(v))
        if (array < 0).any():
            raise ValueError("counts must be nonnegative")
        return _frozen_array(array, np.int64)

    @model_validator(mode="after")
    def check_pair_counts(self) -> "BlockStats":
        """S + O must equal the number of vertex pairs for every block pair."""
        k = self.sizes.size
        if self.s.shape != (k, k) or self.o.shape != (k, k):
            raise ValueError("S and O must be K x K with K = len(sizes)")
        if not (np.array_equal(self.s, self.s.T) and np.array_equal(self.o, self.o.T)):
            raise ValueError("S and O must be symmetric")
        if not np.array_equal(self.s + self.o, self.pair_counts()):
            raise ValueError("S + O must equal the vertex pair counts")
        return self

    @classmethod
    def from_counts(
        cls,
        s: Any,
        sizes: Any,
        loops_allowed: bool = True,
    ) -> "BlockStats":
        """Build stats from edge counts, deriving O from the pair counts."""
        sizes_array = np.atleast_1d(np.asarray(sizes, dtype=np.int64))
        s_array = np.atleast_2d(np.asarray(s, dtype=np.int64))
        pairs = _pair_counts(sizes_array, loops_allowed)
        return cls(s=s_array, o=pairs - s_array, sizes=sizes_array, loops_allowed=loops_allowed)

    @property
    def k(self) -> int:
        """Number of blocks."""
        return int(self.sizes.size)

    @property
    def exposures(self) -> np.ndarray:
        """S + O per block pair."""
        return self.s + self.o

    @property
    def edge_total(self) -> int:
        """Total edge count, summing S over k <= k'."""
        return int(np.triu(self.s).sum())

    @property
    def pair_total(self) -> int:
        """Total admissible pairs, summing S + O over k <= k'."""
        return int(np.triu(self.exposures).sum())

    @property
    def is_complete(self) -> bool:
        """True when no block pair has a missing edge."""
        return not self.o.any()

    @property
    def x_exponents(self) -> np.ndarray:
        """Likelihood exponents 2 S_ii + sum_{j != i} S_ij of each x_i."""
        return np.diag(self.s) + self.s.sum(axis=1)

    def pair_counts(self) -> np.ndarray:
        """Number of vertex pairs per block pair under the loop convention."""
        return _pair_counts(self.sizes, self.loops_allowed)

    def permuted(self, order: Any) -> "BlockStats":
        """Reorder blocks so that new block ``i`` is old block ``order[i]``."""
        order = np.asarray(order)
        return BlockStats(
            s=self.s[np.ix_(order, order)],
            o=self.o[np.ix_(order, order)],
            sizes=self.sizes[order],
            loops_allowed=self.loops_allowed,
        )


def _pair_counts(sizes: np.ndarray, loops_allowed: bool) -> np.ndarray:
    pairs = np.outer(sizes, sizes)
    within = sizes * (sizes - 1) // 2 + (sizes if loops_allowed else 0)
    np.fill_diagonal(pairs, within)
    return pairs
