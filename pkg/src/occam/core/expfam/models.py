"""Value types for conjugate exponential-family computations.

This module defines the hyperparameters of the natural conjugate prior,
the linear nesting map between a full model and its submodel, and the
sufficient summary of an observed dataset.
"""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

RANK_TOLERANCE = 1e-10


def _vector(v: Any) -> np.ndarray:
    array = np.atleast_1d(np.array(v, dtype=np.float64, copy=True))
    if array.ndim != 1:
        raise ValueError("expected a vector")
    if not np.isfinite(array).all():
        raise ValueError("entries must be finite")
    array.setflags(write=False)
    return array


class ConjugateHyper(BaseModel):
    """Hyperparameters (tau, m) of the natural conjugate prior.

    The prior density over the canonical parameter is
    ``rho(theta) = H(tau, m) * exp(<tau, theta> - m * A(theta))``.
    The same pair describes nested-model hyperparameters (upsilon, w).

    Attributes:
        tau: Prior sufficient statistic, length k.
        m: Prior sample size.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    tau: np.ndarray
    m: float = Field(..., gt=0)

    @field_validator("tau", mode="before")
    @classmethod
    def coerce_tau(cls, v: Any) -> np.ndarray:
        """Convert tau to a read-only float vector."""
        return _vector(v)

    @property
    def rank(self) -> int:
        """Dimension k of tau."""
        return int(self.tau.size)

    @property
    def mean_statistic(self) -> np.ndarray:
        """Prior mean statistic tau / m."""
        return self.tau / self.m

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConjugateHyper):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.tau, other.tau)

    __hash__ = None  # type: ignore[assignment]


class DataSummary(BaseModel):
    """Sufficient summary of n i.i.d. observations.

    Attributes:
        t_sum: Sum of the sufficient statistics, length k.
        n: Number of observations.
        log_h: Sum of the log base measure over the observations.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    t_sum: np.ndarray
    n: int = Field(..., ge=0)
    log_h: float = 0.0

    @field_validator("t_sum", mode="before")
    @classmethod
    def coerce_t_sum(cls, v: Any) -> np.ndarray:
        """Convert the statistic sum to a read-only float vector."""
        return _vector(v)

    @property
    def rank(self) -> int:
        """Dimension k of the statistic."""
        return int(self.t_sum.size)

    def merged(self, other: "DataSummary") -> "DataSummary":
        """Summary of the union of two datasets."""
        return DataSummary(
            t_sum=self.t_sum + other.t_sum,
            n=self.n + other.n,
            log_h=self.log_h + other.log_h,
        )


class NestingMap(BaseModel):
    """Linear nesting of a submodel: theta = M^T eta.

    Attributes:
        matrix: The l x k matrix M, required to have full row rank l <= k
            (smallest singular value above 1e-10 times the largest).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def coerce_matrix(cls, v: Any) -> np.ndarray:
        """Convert M to a read-only 2-D float matrix."""
        array = np.atleast_2d(np.array(v, dtype=np.float64, copy=True))
        if array.ndim != 2:
            raise ValueError("M must be a matrix")
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def check_rank(self) -> "NestingMap":
        """M must have full row rank with l <= k."""
        rows, cols = self.matrix.shape
        if rows > cols:
            raise ValueError(f"M must have l <= k, got shape {self.matrix.shape}")
        singular = np.linalg.svd(self.matrix, compute_uv=False)
        if singular[-1] <= RANK_TOLERANCE * singular[0]:
            raise ValueError("M must have full row rank")
        return self

    @classmethod
    def pooling(cls, size: int) -> "NestingMap":
        """The all-ones row that pools ``size`` coordinates into one."""
        return cls(matrix=np.ones((1, size)))

    @classmethod
    def identity(cls, size: int) -> "NestingMap":
        """The identity map (submodel equals the full model)."""
        return cls(matrix=np.eye(size))

    @property
    def nested_rank(self) -> int:
        """Row count l."""
        return int(self.matrix.shape[0])

    @property
    def full_rank(self) -> int:
        """Column count k."""
        return int(self.matrix.shape[1])

    def pseudo_inverse(self) -> np.ndarray:
        """Right inverse M^+ = M^T (M M^T)^{-1}."""
        gram = self.matrix @ self.matrix.T
        return np.linalg.solve(gram, self.matrix).T
