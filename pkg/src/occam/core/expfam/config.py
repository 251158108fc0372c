"""Configuration for the exponential-family module."""

from dataclasses import dataclass

DEFAULT_NEWTON_TOLERANCE = 1e-12


@dataclass(frozen=True)
class NewtonConfig:
    """Settings for inverting the mean map by safeguarded Newton.

    Attributes:
        tol: Tolerance on the statistic scale, |A'(theta) - target|.
        max_iter: Newton iteration limit before falling back to bracketing.
        bracket_step: Initial half-width of the bracketing interval.
        max_bracket_expansions: Doublings allowed while searching a bracket.
    """

    tol: float = DEFAULT_NEWTON_TOLERANCE
    max_iter: int = 200
    bracket_step: float = 1.0
    max_bracket_expansions: int = 200

    def __post_init__(self) -> None:
        """Validate configuration values."""
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.bracket_step <= 0:
            raise ValueError("bracket_step must be positive")
        if self.max_bracket_expansions < 1:
            raise ValueError("max_bracket_expansions must be at least 1")
