"""Pydantic models for candidate models and their evidence reports.

This module defines the candidate specification used by the registry and
the per-candidate report produced by evidence evaluation, including its
JSON rendering.
"""

import math
from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from occam.core.evidence.models import BetaParams, EvidenceMethod, SbmPrior
from occam.graphs.models import BlockAssignment


class ModelKind(str, Enum):
    """Generative graph model families."""

    ER = "er"
    IE = "ie"
    SBM = "sbm"


class ModelSpec(BaseModel):
    """A candidate model.

    Attributes:
        kind: Model family.
        k: Number of blocks (blockmodels only).
        membership: Known block assignment; None means estimate it.
        name: Display label, derived from kind and K when None.
        prior: Prior override. None selects the matched prior: Beta(1, 1)
            for ER, Beta(1/n, 1/n) per edge for IE, Beta(2, 1) per block
            for the blockmodel.
    """

    model_config = ConfigDict(frozen=True)

    kind: ModelKind
    k: int | None = Field(default=None, ge=1)
    membership: BlockAssignment | None = None
    name: str | None = None
    prior: BetaParams | SbmPrior | None = None

    @model_validator(mode="before")
    @classmethod
    def infer_k(cls, data: Any) -> Any:
        """Take K from a known membership when not given."""
        if isinstance(data, dict) and data.get("k") is None:
            membership = data.get("membership")
            if isinstance(membership, BlockAssignment):
                return {**data, "k": membership.k}
        return data

    @model_validator(mode="after")
    def check_kind(self) -> "ModelSpec":
        """Block fields belong to blockmodels only; priors must fit the kind."""
        if self.kind is ModelKind.SBM:
            if self.k is None:
                raise ValueError("a blockmodel needs K or a membership")
            if self.membership is not None and self.membership.k != self.k:
                raise ValueError(f"membership has {self.membership.k} blocks, K={self.k}")
            if self.prior is not None and (
                not isinstance(self.prior, SbmPrior) or self.prior.k != self.k
            ):
                raise ValueError(f"blockmodel prior must be an SbmPrior with K={self.k}")
        else:
            if self.k is not None or self.membership is not None:
                raise ValueError(f"{self.kind.value} takes no blocks")
            if self.prior is not None and not isinstance(self.prior, BetaParams):
                raise ValueError(f"{self.kind.value} prior must be a BetaParams")
        return self

    @classmethod
    def er(cls, prior: BetaParams | None = None) -> "ModelSpec":
        """Erdos-Renyi candidate."""
        return cls(kind=ModelKind.ER, prior=prior)

    @classmethod
    def ie(cls, prior: BetaParams | None = None) -> "ModelSpec":
        """Independent-edge candidate."""
        return cls(kind=ModelKind.IE, prior=prior)

    @classmethod
    def sbm(
        cls,
        k: int | None = None,
        membership: BlockAssignment | None = None,
        name: str | None = None,
        prior: SbmPrior | None = None,
    ) -> "ModelSpec":
        """Rank-1 blockmodel candidate, estimated membership unless given."""
        return cls(kind=ModelKind.SBM, k=k, membership=membership, name=name, prior=prior)

    @property
    def label(self) -> str:
        """Display label such as ``ER``, ``IE`` or ``SBM-2``."""
        if self.name:
            return self.name
        if self.kind is ModelKind.SBM:
            return f"SBM-{self.k}"
        return self.kind.value.upper()

    @property
    def is_matched(self) -> bool:
        """True when the default matched prior is used."""
        return self.prior is None

    @property
    def estimates_membership(self) -> bool:
        """True for blockmodels whose membership must be estimated."""
        return self.kind is ModelKind.SBM and self.membership is None


class EvidenceReport(BaseModel):
    """Evidence of one candidate on one graph.

    Attributes:
        model: The candidate.
        log_evidence: Log-evidence; -inf when evaluation failed.
        method: How the value was obtained.
        map_point: MAP parameters when available (ER edge probability,
            blockmodel latent positions).
        diagnostics: Convergence and curvature details.
        membership_used: Block assignment used by a blockmodel.
        warnings: Notes on fallbacks, priors and degenerate input.
        error: Failure message of a failed evaluation.
    """

    model_config = ConfigDict(frozen=True)

    model: ModelSpec
    log_evidence: float
    method: EvidenceMethod
    map_point: tuple[float, ...] | None = None
    diagnostics: dict[str, Any] = Field(default_factory=dict)
    membership_used: BlockAssignment | None = None
    warnings: tuple[str, ...] = ()
    error: str | None = None

    @property
    def failed(self) -> bool:
        """True when the evaluation raised."""
        return self.method is EvidenceMethod.FAILED

    def with_warning(self, warning: str) -> "EvidenceReport":
        """Copy of the report with one more warning."""
        return self.model_copy(update={"warnings": (*self.warnings, warning)})

    def to_json_dict(self) -> dict[str, Any]:
        """Report in the JSON report schema.

        Keys are model, K, log_evidence, method, map_point, membership and
        warnings; a non-finite log-evidence becomes null.
        """
        membership = self.membership_used
        return {
            "model": self.model.label,
            "K": self.model.k,
            "log_evidence": self.log_evidence if math.isfinite(self.log_evidence) else None,
            "method": self.method.value,
            "map_point": list(self.map_point) if self.map_point is not None else None,
            "membership": membership.labels.tolist() if membership is not None else None,
            "warnings": list(self.warnings),
        }
