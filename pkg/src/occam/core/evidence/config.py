"""Configuration for blockmodel evidence computation.

This module defines configuration dataclasses for the gradient-ascent MAP
search, the Laplace validity gate and the quadrature oracle.
"""

from dataclasses import dataclass

DEFAULT_DOMAIN_EPSILON = 1e-8
DEFAULT_GRADIENT_TOLERANCE = 1e-9
DEFAULT_MAX_ITERATIONS = 10_000


@dataclass(frozen=True)
class SbmOptimizerConfig:
    """Projected Newton and gradient ascent on log p0 over [eps, 1 - eps]^K.

    Attributes:
        max_iter: Iteration limit.
        tol: Convergence threshold on the projected-gradient sup-norm.
        stall_tol: Relative projected-gradient threshold accepted when the
            line search stalls at the rounding floor of log p0.
        domain_epsilon: Distance of the clamp from 0 and 1.
        armijo: Sufficient-increase constant of the backtracking search.
        shrink: Step multiplier after a rejected trial.
        initial_step: First trial step of every line search.
        min_step: Smallest trial step before the line search gives up.
        init_low: Lower clamp of the method-of-moments start.
        init_high: Upper clamp of the method-of-moments start.
    """

    max_iter: int = DEFAULT_MAX_ITERATIONS
    tol: float = DEFAULT_GRADIENT_TOLERANCE
    stall_tol: float = 1e-7
    domain_epsilon: float = DEFAULT_DOMAIN_EPSILON
    armijo: float = 1e-4
    shrink: float = 0.5
    initial_step: float = 1.0
    min_step: float = 1e-30
    init_low: float = 0.05
    init_high: float = 0.95

    def __post_init__(self) -> None:
        """Validate configuration values."""
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.stall_tol <= 0:
            raise ValueError("stall_tol must be positive")
        if not 0 < self.domain_epsilon < 0.5:
            raise ValueError("domain_epsilon must lie in (0, 0.5)")
        if not 0 < self.armijo < 1:
            raise ValueError("armijo must lie in (0, 1)")
        if not 0 < self.shrink < 1:
            raise ValueError("shrink must lie in (0, 1)")
        if self.initial_step <= 0 or self.min_step <= 0:
            raise ValueError("step sizes must be positive")
        if not 0 < self.init_low <= self.init_high < 1:
            raise ValueError("init clamp must satisfy 0 < low <= high < 1")


@dataclass(frozen=True)
class LaplaceGateConfig:
    """When the Laplace approximation is trusted.

    Attributes:
        min_exposure: Minimum S + O over all block pairs.
        max_quadrature_blocks: Largest K for the quadrature fallback.
    """

    min_exposure: int = 5
    max_quadrature_blocks: int = 3

    def __post_init__(self) -> None:
        """Validate configuration values."""
        if self.min_exposure < 0:
            raise ValueError("min_exposure must be non-negative")
        if self.max_quadrature_blocks < 1:
            raise ValueError("max_quadrature_blocks must be at least 1")


@dataclass(frozen=True)
class QuadratureConfig:
    """Tensor-product Gauss-Legendre quadrature in u = x^2.

    Attributes:
        nodes_per_panel: Gauss-Legendre nodes in each panel.
        initial_panels: Panels per axis on the first pass.
        max_doublings: Panel doublings before giving up on the tolerance.
        tol: Absolute tolerance on the log-evidence between passes.
        max_points: Cap on the tensor grid size.
        scan_points: Resolution of the per-axis window scan.
        log_mass_cutoff: Integrand values below peak - cutoff are dropped
            from the integration window.
        max_blocks: Largest supported K.
    """

    nodes_per_panel: int = 20
    initial_panels: int = 2
    max_doublings: int = 6
    tol: float = 1e-10
    max_points: int = 4_000_000
    scan_points: int = 4097
    log_mass_cutoff: float = 50.0
    max_blocks: int = 3

    def __post_init__(self) -> None:
        """Validate configuration values."""
        if self.nodes_per_panel < 2 or self.initial_panels < 1:
            raise ValueError("need at least 2 nodes and 1 panel")
        if self.max_doublings < 0:
            raise ValueError("max_doublings must be non-negative")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.scan_points < 3:
            raise ValueError("scan_points must be at least 3")
        if self.log_mass_cutoff <= 0:
            raise ValueError("log_mass_cutoff must be positive")
        if self.max_blocks < 1:
            raise ValueError("max_blocks must be at least 1")
