"""Pydantic models for graph-model evidence.

This module defines beta priors, edge summaries, blockmodel priors and
the result records produced by the Laplace and routing evidence paths.
"""

from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from occam.core.expfam.models import ConjugateHyper
from occam.graphs.models import Graph
from occam.graphs.statistics import edge_count


class EvidenceMethod(str, Enum):
    """How a log-evidence value was obtained."""

    CLOSED_FORM = "closed_form"
    LAPLACE = "laplace"
    QUADRATURE = "quadrature"
    COMPLETE_GRAPH = "complete_graph"
    FAILED = "failed"


class BetaParams(BaseModel):
    """A Beta(alpha, beta) law on an edge or latent probability.

    Attributes:
        alpha: First shape, positive.
        beta: Second shape, positive.
    """

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(..., gt=0)
    beta: float = Field(..., gt=0)

    @property
    def mean(self) -> float:
        """Prior mean lambda = alpha / (alpha + beta)."""
        return self.alpha / (self.alpha + self.beta)

    @property
    def is_uniform(self) -> bool:
        """True for Beta(1, 1)."""
        return self.alpha == 1.0 and self.beta == 1.0

    def to_hyper(self) -> ConjugateHyper:
        """Canonical conjugate hyperparameters (tau, m) = (alpha, alpha + beta)."""
        return ConjugateHyper(tau=[self.alpha], m=self.alpha + self.beta)

    @classmethod
    def from_hyper(cls, h: ConjugateHyper, size: int = 1) -> "BetaParams":
        """Beta law of p for hyperparameters on ``size`` pooled coordinates.

        ``size=1`` maps a Bernoulli coordinate (tau, m) to Beta(tau, m - tau);
        a pooled (upsilon, w) maps to Beta(upsilon, size * w - upsilon).
        """
        tau = float(h.tau[0])
        return cls(alpha=tau, beta=size * h.m - tau)


class EdgeSummary(BaseModel):
    """Possible and observed edge counts of a graph.

    Attributes:
        n: Number of admissible vertex pairs.
        s: Number of present edges.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0)
    s: int = Field(..., ge=0)

    @model_validator(mode="after")
    def check_counts(self) -> "EdgeSummary":
        """Observed edges cannot exceed possible edges."""
        if self.s > self.n:
            raise ValueError(f"s={self.s} exceeds n={self.n}")
        return self

    @classmethod
    def from_graph(cls, g: Graph) -> "EdgeSummary":
        """Edge summary of an observed graph."""
        n, s = edge_count(g)
        return cls(n=n, s=s)

    @property
    def density(self) -> float:
        """Observed edge density s / n (0 for n = 0)."""
        return self.s / self.n if self.n else 0.0


class IeBoundConditions(BaseModel):
    """Admissible region of the independent-edge selection lower bound.

    Attributes:
        n: Number of possible edges.
        eps: Slack parameter.
        delta: Concentration parameter.
        lower_bound: Lower bound on the probability that the evidence selects IE.
        min_edge_probability: Lower end 1.5830 / (eps sqrt n) of the p band.
        max_edge_probability: Upper end of the p band.
        edge_sum_low: Lower end of the admissible sum of edge probabilities.
        edge_sum_high: Upper end of the admissible sum of edge probabilities.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    eps: float
    delta: float
    lower_bound: float
    min_edge_probability: float
    max_edge_probability: float
    edge_sum_low: float
    edge_sum_high: float


class SbmPrior(BaseModel):
    """Independent Beta priors on the K latent positions.

    Attributes:
        components: One BetaParams per block.
    """

    model_config = ConfigDict(frozen=True)

    components: tuple[BetaParams, ...] = Field(..., min_length=1)

    @classmethod
    def repeated(cls, component: BetaParams, k: int) -> "SbmPrior":
        """K copies of the same component."""
        return cls(components=(component,) * k)

    @property
    def k(self) -> int:
        """Number of blocks."""
        return len(self.components)

    @property
    def alphas(self) -> np.ndarray:
        """First shapes as a vector."""
        return np.array([c.alpha for c in self.components], dtype=np.float64)

    @property
    def betas(self) -> np.ndarray:
        """Second shapes as a vector."""
        return np.array([c.beta for c in self.components], dtype=np.float64)

    def permuted(self, order: Any) -> "SbmPrior":
        """Reorder components so that new block ``i`` is old block ``order[i]``."""
        return SbmPrior(components=tuple(self.components[int(i)] for i in order))


class LaplaceResult(BaseModel):
    """Outcome of the blockmodel MAP search and Laplace approximation.

    Attributes:
        x_star: MAP latent positions.
        log_p0_at_max: log p0 at the MAP.
        log_det_j: log det J, J the negative Hessian at the MAP (None when
            not computed).
        log_evidence: Laplace log-evidence (None when not computed).
        converged: Whether the gradient tolerance was met.
        iterations: Gradient-ascent iterations used.
        boundary_flag: Whether some coordinate is pinned at the domain clamp.
    """

    model_config = ConfigDict(frozen=True)

    x_star: tuple[float, ...]
    log_p0_at_max: float
    log_det_j: float | None = None
    log_evidence: float | None = None
    converged: bool
    iterations: int = Field(..., ge=0)
    boundary_flag: bool

    @field_validator("x_star", mode="before")
    @classmethod
    def coerce_x_star(cls, v: Any) -> tuple[float, ...]:
        """Accept numpy vectors."""
        return tuple(float(value) for value in np.atleast_1d(v))

    @property
    def is_interior(self) -> bool:
        """Converged to an interior point."""
        return self.converged and not self.boundary_flag


class SbmEvidence(BaseModel):
    """Blockmodel log-evidence with the method that produced it.

    Attributes:
        log_evidence: The log-evidence.
        method: Laplace, quadrature or complete-graph closed form.
        laplace: MAP search result, when one was run.
        warnings: Fallback notes.
    """

    model_config = ConfigDict(frozen=True)

    log_evidence: float
    method: EvidenceMethod
    laplace: LaplaceResult | None = None
    warnings: tuple[str, ...] = ()
