"""Configuration for model selection."""

from dataclasses import dataclass, field

from occam.core.evidence.config import (
    LaplaceGateConfig,
    QuadratureConfig,
    SbmOptimizerConfig,
)
from occam.core.membership.config import PowerIterationConfig


@dataclass(frozen=True)
class SelectionConfig:
    """Numerical settings shared by every candidate evaluation.

    Attributes:
        optimizer: Blockmodel MAP search settings.
        gate: Laplace validity gate.
        quadrature: Quadrature fallback settings.
        power: Power iteration settings for membership estimation.
        max_workers: Candidates evaluated concurrently (1 = serial).
    """

    optimizer: SbmOptimizerConfig = field(default_factory=SbmOptimizerConfig)
    gate: LaplaceGateConfig = field(default_factory=LaplaceGateConfig)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    power: PowerIterationConfig = field(default_factory=PowerIterationConfig)
    max_workers: int = 1

    def __post_init__(self) -> None:
        """Validate configuration values."""
        if self.max_workers < 1:
            raise ValueError("max_workers must be at least 1")
