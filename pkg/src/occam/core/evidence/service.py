"""Service layer for blockmodel evidence.

This module routes a blockmodel evidence request to the closed form,
the Laplace approximation or quadrature, according to the validity
gate configuration.
"""

import numpy as np

from occam.core.evidence.config import (
    LaplaceGateConfig,
    QuadratureConfig,
    SbmOptimizerConfig,
)
from occam.core.evidence.models import (
    EvidenceMethod,
    LaplaceResult,
    SbmEvidence,
    SbmPrior,
)
from occam.core.evidence.quadrature import quadrature_log_evidence
from occam.core.evidence.sbm import (
    COMPLETE_GRAPH_PRIOR,
    complete_graph_log_evidence,
    induced_sbm_prior,
    laplace_at,
    laplace_log_evidence,
    map_sbm,
)
from occam.core.exceptions import ApproximationInvalidError
from occam.core.logging import get_logger
from occam.graphs.models import BlockStats

logger = get_logger("occam.evidence.service")


class SbmEvidenceService:
    """Computes blockmodel evidence by the most accurate applicable method.

    Complete graphs under Beta(2, 1) priors use the closed form. Otherwise
    the Laplace approximation is used when the MAP is interior, J is
    positive definite and every block pair has enough exposure; failing
    that, quadrature is used for small K.
    """

    def __init__(
        self,
        gate: LaplaceGateConfig | None = None,
        optimizer: SbmOptimizerConfig | None = None,
        quadrature: QuadratureConfig | None = None,
    ) -> None:
        """Initialize the service.

        Args:
            gate: Laplace validity gate.
            optimizer: MAP search settings.
            quadrature: Quadrature settings.
        """
        self.gate = gate or LaplaceGateConfig()
        self.optimizer = optimizer or SbmOptimizerConfig()
        self.quadrature = quadrature or QuadratureConfig()

    def gate_failure(self, stats: BlockStats, result: LaplaceResult) -> str | None:
        """Reason the Laplace gate rejects a MAP search result, None if it passes."""
        if not result.converged:
            return "gradient ascent did not converge"
        if result.boundary_flag:
            return "MAP on the domain boundary"
        min_exposure = int(stats.exposures[np.triu_indices(stats.k)].min())
        if min_exposure < self.gate.min_exposure:
            return f"block-pair exposure {min_exposure} below {self.gate.min_exposure}"
        return None

    def log_evidence(self, stats: BlockStats, prior: SbmPrior | None = None) -> SbmEvidence:
        """Blockmodel log-evidence with the method used.

        Args:
            stats: Block-pair counts.
            prior: Blockmodel prior, the induced Beta(2, 1)^K when None.

        Returns:
            The log-evidence and how it was obtained.

        Raises:
            ApproximationInvalidError: If the Laplace gate fails and K is
                too large for quadrature.
        """
        prior = prior or induced_sbm_prior(stats.k)

        if stats.is_complete and all(c == COMPLETE_GRAPH_PRIOR for c in prior.components):
            return SbmEvidence(
                log_evidence=complete_graph_log_evidence(stats, prior),
                method=EvidenceMethod.COMPLETE_GRAPH,
            )

        result = map_sbm(stats, prior, self.optimizer)
        reason = self.gate_failure(stats, result)
        if reason is None:
            try:
                result = laplace_at(result, stats, prior)
            except ApproximationInvalidError as e:
                reason = str(e)
            else:
                return SbmEvidence(
                    log_evidence=result.log_evidence,
                    method=EvidenceMethod.LAPLACE,
                    laplace=result,
                )

        limit = min(self.gate.max_quadrature_blocks, self.quadrature.max_blocks)
        if stats.k > limit:
            raise ApproximationInvalidError(
                f"Laplace gate failed ({reason}) and K={stats.k} exceeds the "
                f"quadrature limit {limit}"
            )
        logger.info(f"Laplace gate failed ({reason}), using quadrature for K={stats.k}")
        return SbmEvidence(
            log_evidence=quadrature_log_evidence(
                stats, prior, self.quadrature, center=result.x_star
            ),
            method=EvidenceMethod.QUADRATURE,
            laplace=result,
            warnings=(f"laplace fallback: {reason}",),
        )

    def laplace_quadrature_gap(
        self, stats: BlockStats, prior: SbmPrior | None = None
    ) -> float:
        """Laplace minus quadrature log-evidence, in nats.

        Raises:
            ApproximationInvalidError: If the Laplace approximation is invalid.
        """
        prior = prior or induced_sbm_prior(stats.k)
        laplace = laplace_log_evidence(stats, prior, self.optimizer)
        exact = quadrature_log_evidence(stats, prior, self.quadrature, center=laplace.x_star)
        return float(laplace.log_evidence - exact)


def sbm_log_evidence(stats: BlockStats, prior: SbmPrior | None = None) -> SbmEvidence:
    """Blockmodel log-evidence with default configuration."""
    return SbmEvidenceService().log_evidence(stats, prior)
