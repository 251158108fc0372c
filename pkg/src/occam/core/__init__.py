"""Core module for evidence-based model selection.

This module contains the numerical heart of the project: the conjugate
exponential-family machinery, graph-model evidences, membership
estimation and model selection. Subpackages are imported explicitly.
"""

from occam.core.exceptions import (
    ApproximationInvalidError,
    ConfigurationError,
    DomainError,
    GraphParseError,
    ModelEvaluationError,
    NumericError,
    OccamError,
    SelectionError,
    UnsupportedOperationError,
)
from occam.core.logging import get_logger, setup_logging

__all__ = [
    # Logging
    "get_logger",
    "setup_logging",
    # Exceptions
    "ApproximationInvalidError",
    "ConfigurationError",
    "DomainError",
    "GraphParseError",
    "ModelEvaluationError",
    "NumericError",
    "OccamError",
    "SelectionError",
    "UnsupportedOperationError",
]
