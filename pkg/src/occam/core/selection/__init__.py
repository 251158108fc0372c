"""Model selection by largest log-evidence.

This module provides candidate specifications, registries, evidence
reports and the selection service.
"""

from occam.core.selection.config import SelectionConfig
from occam.core.selection.models import EvidenceReport, ModelKind, ModelSpec
from occam.core.selection.registry import connectome_registry, default_registry
from occam.core.selection.service import (
    EMPTY_GRAPH_WARNING,
    UNMATCHED_PRIOR_WARNING,
    ModelSelectionService,
    evaluate_model,
    select_model,
)

__all__ = [
    # Config
    "SelectionConfig",
    # Models
    "EvidenceReport",
    "ModelKind",
    "ModelSpec",
    # Registries
    "connectome_registry",
    "default_registry",
    # Service
    "EMPTY_GRAPH_WARNING",
    "UNMATCHED_PRIOR_WARNING",
    "ModelSelectionService",
    "evaluate_model",
    "select_model",
]
