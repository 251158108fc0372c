"""Pydantic models for spectral embeddings."""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class Embedding(BaseModel):
    """Rank-1 adjacency spectral embedding.

    Attributes:
        values: Read-only embedding coordinate of every vertex.
        sigma: Leading singular value of the adjacency matrix.
        sign_convention: Whether the sign was fixed so the values sum to a
            nonnegative number.
        residual: Relative residual of the eigenpair at termination.
        iterations: Power iterations used.
        converged: Whether the residual tolerance was met.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray
    sigma: float = Field(..., gt=0)
    sign_convention: bool = True
    residual: float = Field(..., ge=0)
    iterations: int = Field(..., ge=0)
    converged: bool

    @field_validator("values", mode="before")
    @classmethod
    def coerce_values(cls, v: Any) -> np.ndarray:
        """Store values as a read-only float vector."""
        array = np.array(v, dtype=np.float64, copy=True).ravel()
        array.setflags(write=False)
        return array

    @property
    def n_v(self) -> int:
        """Number of embedded vertices."""
        return int(self.values.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Embedding):
            return NotImplemented
        return (
            self.sigma == other.sigma
            and self.iterations == other.iterations
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None  # type: ignore[assignment]
