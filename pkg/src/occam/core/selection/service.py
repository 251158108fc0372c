"""Service layer for model selection.

This module evaluates candidate models on an observed graph, routing
each to its evidence computation with the matched prior, and selects the
candidate with the largest log-evidence.
"""

import math
from concurrent.futures import ThreadPoolExecutor

from occam.core.evidence.er_ie import (
    UNIFORM_PRIOR,
    log_evidence_er,
    log_evidence_ie,
    map_er,
    matched_ie_prior,
)
from occam.core.evidence.models import EdgeSummary, EvidenceMethod
from occam.core.evidence.sbm import induced_sbm_prior
from occam.core.evidence.service import SbmEvidenceService
from occam.core.exceptions import (
    DomainError,
    ModelEvaluationError,
    OccamError,
    SelectionError,
)
from occam.core.logging import get_logger
from occam.core.membership.clustering import estimate_membership
from occam.core.selection.config import SelectionConfig
from occam.core.selection.models import EvidenceReport, ModelKind, ModelSpec
from occam.graphs.models import Graph
from occam.graphs.statistics import block_stats, edge_indicators

logger = get_logger("occam.selection")

UNMATCHED_PRIOR_WARNING = "unmatched prior"
EMPTY_GRAPH_WARNING = "empty graph: the generative model is not meaningful"


class ModelSelectionService:
    """Evaluates candidate models and selects the one with largest evidence."""

    def __init__(self, config: SelectionConfig | None = None) -> None:
        """Initialize the selection service.

        Args:
            config: Numerical settings for every candidate.
        """
        self.config = config or SelectionConfig()
        self.sbm = SbmEvidenceService(
            gate=self.config.gate,
            optimizer=self.config.optimizer,
            quadrature=self.config.quadrature,
        )

    def _evaluate_er(self, g: Graph, spec: ModelSpec) -> EvidenceReport:
        prior = spec.prior or UNIFORM_PRIOR
        es = EdgeSummary.from_graph(g)
        try:
            mode: tuple[float, ...] | None = (map_er(es, prior),)
        except DomainError:
            mode = None
        return EvidenceReport(
            model=spec,
            log_evidence=log_evidence_er(es, prior),
            method=EvidenceMethod.CLOSED_FORM,
            map_point=mode,
        )

    def _evaluate_ie(self, g: Graph, spec: ModelSpec) -> EvidenceReport:
        a = edge_indicators(g)
        if a.size == 0:
            log_evidence = 0.0
        else:
            log_evidence = log_evidence_ie(a, spec.prior or matched_ie_prior(a.size))
        return EvidenceReport(
            model=spec,
            log_evidence=log_evidence,
            method=EvidenceMethod.CLOSED_FORM,
        )

    def _evaluate_sbm(self, g: Graph, spec: ModelSpec) -> EvidenceReport:
        membership = spec.membership
        if membership is None:
            membership = estimate_membership(g, spec.k, self.config.power)
        stats = block_stats(g, membership)
        prior = spec.prior or induced_sbm_prior(membership.k)
        evidence = self.sbm.log_evidence(stats, prior)

        diagnostics = {}
        map_point = None
        if evidence.laplace is not None:
            laplace = evidence.laplace
            map_point = laplace.x_star
            diagnostics = {
                "converged": laplace.converged,
                "boundary_flag": laplace.boundary_flag,
                "iterations": laplace.iterations,
                "log_det_j": laplace.log_det_j,
            }
        return EvidenceReport(
            model=spec,
            log_evidence=evidence.log_evidence,
            method=evidence.method,
            map_point=map_point,
            diagnostics=diagnostics,
            membership_used=membership,
            warnings=evidence.warnings,
        )

    def evaluate(self, g: Graph, spec: ModelSpec) -> EvidenceReport:
        """Log-evidence of one candidate on a graph.

        Args:
            g: Observed graph.
            spec: Candidate model.

        Returns:
            The evidence report.

        Raises:
            ModelEvaluationError: Wrapping any failure, with the model label.
        """
        evaluators = {
            ModelKind.ER: self._evaluate_er,
            ModelKind.IE: self._evaluate_ie,
            ModelKind.SBM: self._evaluate_sbm,
        }
        try:
            report = evaluators[spec.kind](g, spec)
        except OccamError as e:
            raise ModelEvaluationError(spec.label, e) from e

        if not spec.is_matched:
            logger.warning(f"{spec.label} evaluated with an unmatched prior")
            report = report.with_warning(UNMATCHED_PRIOR_WARNING)
        if g.is_empty:
            report = report.with_warning(EMPTY_GRAPH_WARNING)
        logger.debug(f"{spec.label}: log-evidence {report.log_evidence:.6f} ({report.method.value})")
        return report

    def _evaluate_or_fail(self, g: Graph, spec: ModelSpec) -> EvidenceReport:
        try:
            return self.evaluate(g, spec)
        except ModelEvaluationError as e:
            logger.warning(f"Candidate {e}")
            warnings = (str(e.cause),)
            if g.is_empty:
                warnings += (EMPTY_GRAPH_WARNING,)
            return EvidenceReport(
                model=spec,
                log_evidence=-math.inf,
                method=EvidenceMethod.FAILED,
                warnings=warnings,
                error=str(e.cause),
            )

    def select(
        self, g: Graph, candidates: list[ModelSpec]
    ) -> tuple[ModelSpec, list[EvidenceReport]]:
        """Pick the candidate with the largest log-evidence.

        Failed candidates are reported with method ``failed`` and never win.
        Ties go to the earlier candidate.

        Args:
            g: Observed graph.
            candidates: Nonempty candidate list.

        Returns:
            Tuple of (winner, reports in candidate order).

        Raises:
            DomainError: If no candidates are given.
            SelectionError: If every candidate failed.
        """
        if not candidates:
            raise DomainError("no candidate models given")
        if g.is_empty:
            logger.warning("Selecting a model for an empty graph")

        if self.config.max_workers > 1 and len(candidates) > 1:
            with ThreadPoolExecutor(max_workers=self.config.max_workers) as pool:
                reports = list(pool.map(lambda spec: self._evaluate_or_fail(g, spec), candidates))
        else:
            reports = [self._evaluate_or_fail(g, spec) for spec in candidates]

        best: EvidenceReport | None = None
        for report in reports:
            if report.failed:
                continue
            if best is None or report.log_evidence > best.log_evidence:
                best = report
        if best is None:
            errors = "; ".join(f"{r.model.label}: {r.error}" for r in reports)
            raise SelectionError(f"every candidate failed ({errors})")

        logger.info(f"Selected {best.model.label} (log-evidence {best.log_evidence:.6f})")
        return best.model, reports


def evaluate_model(
    g: Graph, spec: ModelSpec, config: SelectionConfig | None = None
) -> EvidenceReport:
    """Log-evidence report of one candidate; see ModelSelectionService.evaluate."""
    return ModelSelectionService(config).evaluate(g, spec)


def select_model(
    g: Graph,
    candidates: list[ModelSpec],
    config: SelectionConfig | None = None,
) -> tuple[ModelSpec, list[EvidenceReport]]:
    """Winner and reports over the candidates; see ModelSelectionService.select."""
    return ModelSelectionService(config).select(g, candidates)
