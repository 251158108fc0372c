"""Tests for candidate specifications, reports and registries."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from occam.core.evidence.models import BetaParams, EvidenceMethod, SbmPrior
from occam.core.selection.models import EvidenceReport, ModelKind, ModelSpec
from occam.core.selection.registry import connectome_registry, default_registry
from occam.graphs.models import BlockAssignment


class TestModelSpec:
    """Tests for the ModelSpec model."""

    def test_labels(self) -> None:
        assert ModelSpec.er().label == "ER"
        assert ModelSpec.ie().label == "IE"
        assert ModelSpec.sbm(k=3).label == "SBM-3"
        assert ModelSpec.sbm(k=2, name="hemisphere").label == "hemisphere"

    def test_k_taken_from_membership(self) -> None:
        spec = ModelSpec.sbm(membership=BlockAssignment.balanced(6, 3))
        assert spec.k == 3
        assert not spec.estimates_membership
        assert ModelSpec.sbm(k=3).estimates_membership

    def test_matched_by_default(self) -> None:
        assert ModelSpec.er().is_matched
        assert not ModelSpec.er(BetaParams(alpha=2.0, beta=2.0)).is_matched

    def test_blockmodel_needs_k(self) -> None:
        with pytest.raises(ValidationError, match="needs K"):
            ModelSpec(kind=ModelKind.SBM)

    def test_membership_block_count_mismatch(self) -> None:
        with pytest.raises(ValidationError, match="membership has 2 blocks"):
            ModelSpec.sbm(k=3, membership=BlockAssignment.balanced(6, 2))

    @pytest.mark.parametrize("kind", [ModelKind.ER, ModelKind.IE])
    def test_edge_models_take_no_blocks(self, kind: ModelKind) -> None:
        with pytest.raises(ValidationError, match="takes no blocks"):
            ModelSpec(kind=kind, k=2)

    def test_prior_must_fit_kind(self) -> None:
        sbm_prior = SbmPrior.repeated(BetaParams(alpha=2.0, beta=1.0), 2)
        with pytest.raises(ValidationError, match="BetaParams"):
            ModelSpec(kind=ModelKind.ER, prior=sbm_prior)
        with pytest.raises(ValidationError, match="K=3"):
            ModelSpec.sbm(k=3, prior=sbm_prior)

    def test_frozen(self) -> None:
        spec = ModelSpec.er()
        with pytest.raises(ValidationError):
            spec.name = "other"


class TestEvidenceReport:
    """Tests for the EvidenceReport model."""

    def test_json_schema(self) -> None:
        report = EvidenceReport(
            model=ModelSpec.sbm(k=2),
            log_evidence=-12.5,
            method=EvidenceMethod.LAPLACE,
            map_point=(0.3, 0.8),
            membership_used=BlockAssignment.balanced(4, 2),
        )

        assert report.to_json_dict() == {
            "model": "SBM-2",
            "K": 2,
            "log_evidence": -12.5,
            "method": "laplace",
            "map_point": [0.3, 0.8],
            "membership": [1, 1, 2, 2],
            "warnings": [],
        }

    def test_failed_report(self) -> None:
        report = EvidenceReport(
            model=ModelSpec.ie(),
            log_evidence=-math.inf,
            method=EvidenceMethod.FAILED,
            error="boom",
        )
        assert report.failed
        data = report.to_json_dict()
        assert data["log_evidence"] is None
        assert data["K"] is None

    def test_with_warning_copies(self) -> None:
        report = EvidenceReport(
            model=ModelSpec.er(), log_evidence=-1.0, method=EvidenceMethod.CLOSED_FORM
        )
        warned = report.with_warning("note")
        assert warned.warnings == ("note",)
        assert report.warnings == ()


class TestRegistries:
    """Tests for the candidate registries."""

    def test_default_registry(self) -> None:
        assert [spec.label for spec in default_registry()] == ["ER", "SBM-2", "IE"]

    def test_default_registry_several_k(self) -> None:
        labels = [spec.label for spec in default_registry((2, 3, 4))]
        assert labels == ["ER", "SBM-2", "SBM-3", "SBM-4", "IE"]

    def test_connectome_registry(self) -> None:
        partitions = {
            "hemisphere": BlockAssignment.balanced(8, 2),
            "tissue": BlockAssignment(labels=[1, 2, 1, 2, 1, 2, 1, 2]),
        }
        registry = connectome_registry(partitions)

        assert [spec.label for spec in registry] == [
            "ER",
            "SBM-2 (hemisphere)",
            "SBM-2 (tissue)",
            "SBM-4 (hemisphere x tissue)",
            "SBM-4",
            "IE",
        ]
        assert registry[1].membership == partitions["hemisphere"]
        np.testing.assert_array_equal(registry[3].membership.labels, [1, 2, 1, 2, 3, 4, 3, 4])
        assert registry[4].estimates_membership

    def test_connectome_registry_single_partition(self) -> None:
        """One named partition has no product candidate."""
        registry = connectome_registry({"hemisphere": BlockAssignment.balanced(8, 2)})
        assert [spec.label for spec in registry] == ["ER", "SBM-2 (hemisphere)", "SBM-4", "IE"]
