"""Configuration for spectral membership estimation."""

from dataclasses import dataclass

DEFAULT_POWER_TOLERANCE = 1e-10
DEFAULT_POWER_MAX_ITERATIONS = 10_000


@dataclass(frozen=True)
class PowerIterationConfig:
    """Power iteration for the leading eigenpair of A^T A.

    Attributes:
        tol: Relative residual ||A^T A v - sigma^2 v|| / sigma^2 at which
            the iteration stops.
        max_iter: Iteration limit.
        seed: Seed of the random positive start vector.
    """

    tol: float = DEFAULT_POWER_TOLERANCE
    max_iter: int = DEFAULT_POWER_MAX_ITERATIONS
    seed: int = 0

    def __post_init__(self) -> None:
        """Validate configuration values."""
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
