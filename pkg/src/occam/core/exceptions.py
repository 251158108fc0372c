"""Custom exceptions for Occam.

This module defines the exception hierarchy shared by graph handling,
evidence computation, model selection and the simulation harness.
"""

from pathlib import Path


class OccamError(Exception):
    """Base exception for all Occam errors."""


class DomainError(OccamError, ValueError):
    """An input lies outside the domain of an operation."""


class UndefinedEvidenceError(DomainError):
    """Flat-prior evidence is undefined for the observed statistic."""


class UndefinedModeError(DomainError):
    """The posterior mode does not exist for the given prior and data."""


class BoundaryError(DomainError):
    """An estimate falls on the boundary of the parameter space."""


class RankError(DomainError):
    """A nesting map is numerically rank deficient."""


class DegenerateEmbeddingError(DomainError):
    """Spectral embedding is undefined (graph has no edges)."""


class ConfigurationError(OccamError, ValueError):
    """Invalid or missing configuration."""


class GraphParseError(OccamError):
    """A graph or membership file could not be parsed."""

    def __init__(
        self,
        message: str,
        line: int | None = None,
        path: Path | str | None = None,
    ):
        """Initialize with the location of the failure.

        Args:
            message: Description of the problem.
            line: 1-based line number, or None for whole-file problems.
            path: File being parsed, if known.
        """
        self.line = line
        self.path = Path(path) if path is not None else None
        location = ""
        if self.path is not None:
            location += f"{self.path}"
        if line is not None:
            location += f"{':' if location else 'line '}{line}"
        super().__init__(f"{location}: {message}" if location else message)


class UnsupportedOperationError(OccamError):
    """The requested operation is not available for this model."""


class NumericError(OccamError, ArithmeticError):
    """A numerical computation failed (singular curvature, boundary)."""


class ApproximationInvalidError(NumericError):
    """The Laplace approximation is not valid at the computed MAP."""


class ModelEvaluationError(OccamError):
    """Evaluating a candidate model failed."""

    def __init__(self, model: str, cause: Exception):
        """Initialize with the failing model label.

        Args:
            model: Label of the candidate model.
            cause: Underlying error.
        """
        self.model = model
        self.cause = cause
        super().__init__(f"{model}: {cause}")


class SelectionError(OccamError):
    """No candidate model could be evaluated."""
