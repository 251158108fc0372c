"""Tests for candidate evaluation and model selection."""

import math

import numpy as np
import pytest

from occam.core.evidence.er_ie import log_bayes_factor_ie_er
from occam.core.evidence.models import BetaParams, EdgeSummary, EvidenceMethod
from occam.core.exceptions import ModelEvaluationError, SelectionError
from occam.core.selection import (
    EMPTY_GRAPH_WARNING,
    UNMATCHED_PRIOR_WARNING,
    ModelKind,
    ModelSelectionService,
    ModelSpec,
    SelectionConfig,
    default_registry,
    evaluate_model,
    select_model,
)
from occam.graphs.models import BlockAssignment, Graph
from occam.graphs.sampling import sample_er, sample_sbm_rank1


@pytest.fixture
def service() -> ModelSelectionService:
    return ModelSelectionService()


class TestEvaluateModel:
    """Tests for evaluate_model routing."""

    def test_complete_graph_er(self) -> None:
        g = Graph.complete(6)
        report = evaluate_model(g, ModelSpec.er())

        assert report.log_evidence == pytest.approx(-math.log(22))
        assert report.method is EvidenceMethod.CLOSED_FORM
        assert report.map_point == (1.0,)

    @pytest.mark.parametrize("loops_allowed", [True, False])
    def test_complete_graph_ie(self, loops_allowed: bool) -> None:
        g = Graph.complete(6, loops_allowed=loops_allowed)
        report = evaluate_model(g, ModelSpec.ie())
        assert report.log_evidence == pytest.approx(g.possible_edges * math.log(0.5))

    def test_complete_graph_blockmodel_closed_form(self) -> None:
        spec = ModelSpec.sbm(membership=BlockAssignment.balanced(6, 2))
        report = evaluate_model(Graph.complete(6), spec)

        assert report.method is EvidenceMethod.COMPLETE_GRAPH
        assert report.log_evidence < -math.log(22)
        assert report.membership_used == spec.membership

    def test_estimated_membership(self, rng: np.random.Generator) -> None:
        g = sample_er(40, 0.4, seed=rng)
        report = evaluate_model(g, ModelSpec.sbm(k=2))

        assert math.isfinite(report.log_evidence)
        assert report.method in (EvidenceMethod.LAPLACE, EvidenceMethod.QUADRATURE)
        assert report.membership_used is not None
        assert report.membership_used.k == 2

    def test_laplace_diagnostics(self, rng: np.random.Generator) -> None:
        assignment = BlockAssignment.balanced(80, 2)
        g = sample_sbm_rank1((0.4, 0.8), assignment, seed=rng)
        report = evaluate_model(g, ModelSpec.sbm(membership=assignment))

        assert report.method is EvidenceMethod.LAPLACE
        assert report.diagnostics["converged"]
        assert not report.diagnostics["boundary_flag"]
        assert np.isfinite(report.diagnostics["log_det_j"])
        assert len(report.map_point) == 2

    def test_unmatched_prior_is_flagged(self, hand_graph: Graph) -> None:
        spec = ModelSpec.er(BetaParams(alpha=3.0, beta=1.0))
        report = evaluate_model(hand_graph, spec)
        assert UNMATCHED_PRIOR_WARNING in report.warnings

    @pytest.mark.parametrize("spec", [ModelSpec.er(), ModelSpec.ie()])
    def test_empty_graph_is_flagged(self, spec: ModelSpec) -> None:
        """A single evaluation carries the warning without going through select."""
        report = evaluate_model(Graph.empty(6), spec)
        assert report.warnings == (EMPTY_GRAPH_WARNING,)

    def test_nonempty_graph_not_flagged(self, hand_graph: Graph) -> None:
        assert EMPTY_GRAPH_WARNING not in evaluate_model(hand_graph, ModelSpec.er()).warnings

    def test_failure_wrapped_with_label(self) -> None:
        with pytest.raises(ModelEvaluationError, match="SBM-2") as info:
            evaluate_model(Graph.empty(5), ModelSpec.sbm(k=2))
        assert "without edges" in str(info.value.cause)


class TestSelectModel:
    """Tests for select_model and ModelSelectionService.select."""

    def test_complete_graph_selects_er(self) -> None:
        g = Graph.complete(12)
        candidates = [
            ModelSpec.er(),
            ModelSpec.ie(),
            *(
                ModelSpec.sbm(membership=BlockAssignment.balanced(12, k))
                for k in range(2, 6)
            ),
        ]
        winner, reports = select_model(g, candidates)

        assert winner == ModelSpec.er()
        assert [r.model for r in reports] == candidates

    def test_single_candidate(self, hand_graph: Graph) -> None:
        winner, reports = select_model(hand_graph, [ModelSpec.ie()])
        assert winner.kind is ModelKind.IE
        assert len(reports) == 1

    def test_tie_goes_to_earlier_candidate(self, hand_graph: Graph) -> None:
        first = ModelSpec(kind=ModelKind.ER, name="first")
        second = ModelSpec(kind=ModelKind.ER, name="second")
        winner, _ = select_model(hand_graph, [first, second])
        assert winner.label == "first"

    def test_failed_candidate_is_reported(self) -> None:
        g = Graph.empty(6)
        winner, reports = select_model(g, [ModelSpec.sbm(k=2), ModelSpec.er()])

        assert winner.kind is ModelKind.ER
        failed = reports[0]
        assert failed.failed
        assert failed.log_evidence == -math.inf
        assert "without edges" in failed.error
        assert EMPTY_GRAPH_WARNING in failed.warnings

    def test_every_candidate_failed(self) -> None:
        with pytest.raises(SelectionError, match="every candidate failed"):
            select_model(Graph.empty(6), [ModelSpec.sbm(k=2), ModelSpec.sbm(k=3)])

    def test_no_candidates(self, hand_graph: Graph) -> None:
        with pytest.raises(ValueError, match="no candidate"):
            select_model(hand_graph, [])

    def test_empty_graph_warning(self) -> None:
        winner, reports = select_model(Graph.empty(6), [ModelSpec.er(), ModelSpec.ie()])
        assert winner.kind is ModelKind.ER
        assert all(EMPTY_GRAPH_WARNING in r.warnings for r in reports)

    def test_er_versus_ie_follows_bayes_factor(self, rng: np.random.Generator) -> None:
        for _ in range(30):
            p = float(rng.uniform(0.2, 0.8))
            g = sample_er(12, p, seed=rng)
            winner, _ = select_model(g, [ModelSpec.er(), ModelSpec.ie()])
            factor = log_bayes_factor_ie_er(EdgeSummary.from_graph(g), 0.5)
            assert (winner.kind is ModelKind.IE) == (factor > 0)

    def test_deterministic(self, rng: np.random.Generator) -> None:
        g = sample_er(30, 0.35, seed=rng)
        first = select_model(g, default_registry())
        assert select_model(g, default_registry()) == first

    def test_threaded_matches_serial(self, rng: np.random.Generator) -> None:
        g = sample_er(30, 0.35, seed=rng)
        candidates = default_registry((2, 3))
        threaded = ModelSelectionService(SelectionConfig(max_workers=4))

        assert threaded.select(g, candidates) == select_model(g, candidates)

    def test_invalid_workers(self) -> None:
        with pytest.raises(ValueError, match="max_workers"):
            SelectionConfig(max_workers=0)

    @pytest.mark.slow
    def test_complete_graphs_always_select_er(
        self, service: ModelSelectionService, rng: np.random.Generator
    ) -> None:
        """Balanced, shuffled and lopsided known partitions all lose to ER."""
        instances = 0
        for n_v in range(2, 51):
            g = Graph.complete(n_v)
            for k in range(2, min(5, n_v) + 1):
                balanced = BlockAssignment.balanced(n_v, k)
                shuffled = BlockAssignment(labels=rng.permutation(balanced.labels), k=k)
                lopsided = BlockAssignment(
                    labels=np.concatenate([np.ones(n_v - k + 1), np.arange(2, k + 1)]),
                    k=k,
                )
                for membership in (balanced, shuffled, lopsided):
                    candidates = [
                        ModelSpec.er(),
                        ModelSpec.sbm(membership=membership),
                        ModelSpec.ie(),
                    ]
                    winner, _ = service.select(g, candidates)
                    assert winner.kind is ModelKind.ER, (n_v, membership.labels)
                    instances += 1

        assert instances == 3 * (1 + 2 + 3 + 4 * 46)

    @pytest.mark.slow
    def test_two_block_graphs_select_blockmodel(
        self, service: ModelSelectionService
    ) -> None:
        assignment = BlockAssignment.balanced(120, 2)
        wins = 0
        for seed in range(100):
            g = sample_sbm_rank1((0.2, 0.9), assignment, seed=seed)
            winner, _ = service.select(g, default_registry())
            wins += winner.label == "SBM-2"
        assert wins >= 95
