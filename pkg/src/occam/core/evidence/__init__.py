"""Log-evidence of the three random graph models.

This module provides the closed-form ER and IE evidences, the IE
selection bound and the blockmodel evidence by Laplace approximation,
quadrature or the complete-graph closed form.
"""

from occam.core.evidence.config import (
    LaplaceGateConfig,
    QuadratureConfig,
    SbmOptimizerConfig,
)
from occam.core.evidence.er_ie import (
    UNIFORM_PRIOR,
    bic_ie,
    ie_selection_conditions,
    ie_selection_lower_bound,
    log_bayes_factor_ie_er,
    log_binomial,
    log_evidence_er,
    log_evidence_er_via_map,
    log_evidence_ie,
    map_er,
    matched_ie_prior,
)
from occam.core.evidence.models import (
    BetaParams,
    EdgeSummary,
    EvidenceMethod,
    IeBoundConditions,
    LaplaceResult,
    SbmEvidence,
    SbmPrior,
)
from occam.core.evidence.quadrature import quadrature_log_evidence
from occam.core.evidence.sbm import (
    COMPLETE_GRAPH_PRIOR,
    complete_graph_log_evidence,
    fit_induced_component,
    grad_log_p0,
    hessian_log_p0,
    induced_sbm_prior,
    initial_point,
    laplace_at,
    laplace_log_evidence,
    log_det_negative_hessian,
    log_p0,
    log_p0_batch,
    map_sbm,
)
from occam.core.evidence.service import SbmEvidenceService, sbm_log_evidence

__all__ = [
    # Config
    "LaplaceGateConfig",
    "QuadratureConfig",
    "SbmOptimizerConfig",
    # Models
    "BetaParams",
    "EdgeSummary",
    "EvidenceMethod",
    "IeBoundConditions",
    "LaplaceResult",
    "SbmEvidence",
    "SbmPrior",
    # ER / IE
    "UNIFORM_PRIOR",
    "bic_ie",
    "ie_selection_conditions",
    "ie_selection_lower_bound",
    "log_bayes_factor_ie_er",
    "log_binomial",
    "log_evidence_er",
    "log_evidence_er_via_map",
    "log_evidence_ie",
    "map_er",
    "matched_ie_prior",
    # Blockmodel
    "COMPLETE_GRAPH_PRIOR",
    "complete_graph_log_evidence",
    "fit_induced_component",
    "grad_log_p0",
    "hessian_log_p0",
    "induced_sbm_prior",
    "initial_point",
    "laplace_at",
    "laplace_log_evidence",
    "log_det_negative_hessian",
    "log_p0",
    "log_p0_batch",
    "map_sbm",
    "quadrature_log_evidence",
    # Service
    "SbmEvidenceService",
    "sbm_log_evidence",
]
