"""Tensor-product quadrature of the blockmodel evidence integral.

The integral of p0 over (0, 1)^K is taken in u = x^2 coordinates, where
the likelihood is polynomial in each u_i. Every axis is restricted to the
window where the conditional log-integrand at the MAP stays within a
cutoff of its peak, then integrated with composite Gauss-Legendre rules
whose panel count doubles until the log-evidence settles.
"""

from collections.abc import Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import logsumexp

from occam.core.evidence.config import QuadratureConfig
from occam.core.evidence.models import SbmPrior
from occam.core.evidence.sbm import log_p0_batch, map_sbm
from occam.core.exceptions import NumericError, UnsupportedOperationError
from occam.core.logging import get_logger
from occam.graphs.models import BlockStats

logger = get_logger("occam.evidence.quadrature")

LOG_2 = float(np.log(2.0))


def _log_integrand(u: np.ndarray, stats: BlockStats, prior: SbmPrior) -> np.ndarray:
    """log of p0(sqrt(u)) / prod(2 sqrt(u_i)) for an (N, K) array of u."""
    return log_p0_batch(np.sqrt(u), stats, prior) - np.sum(
        LOG_2 + 0.5 * np.log(u), axis=1
    )


def _axis_window(
    axis: int,
    center: np.ndarray,
    stats: BlockStats,
    prior: SbmPrior,
    config: QuadratureConfig,
) -> tuple[float, float]:
    """Interval of u_axis carrying the mass, scanned through the center."""
    grid = (np.arange(config.scan_points) + 0.5) / config.scan_points
    points = np.repeat(center[None, :], grid.size, axis=0)
    points[:, axis] = grid
    values = _log_integrand(points, stats, prior)

    peak = np.max(values)
    if not np.isfinite(peak):
        raise NumericError(f"log-integrand not finite along axis {axis}")
    kept = np.nonzero(values >= peak - config.log_mass_cutoff)[0]
    low, high = grid[kept[0]], grid[kept[-1]]

    # Widen to cover the marginal spread
    width = high - low + 1.0 / config.scan_points
    return max(0.0, low - width), min(1.0, high + width)


def _axis_rule(
    low: float, high: float, panels: int, nodes: np.ndarray, weights: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and log-weights on [low, high]."""
    edges = np.linspace(low, high, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    points = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    log_weights = np.log((half[:, None] * weights[None, :]).ravel())
    return points, log_weights


def _tensor_pass(
    windows: Sequence[tuple[float, float]],
    panels: int,
    stats: BlockStats,
    prior: SbmPrior,
    config: QuadratureConfig,
) -> float:
    nodes, weights = leggauss(config.nodes_per_panel)
    rules = [_axis_rule(low, high, panels, nodes, weights) for low, high in windows]
    grids = np.meshgrid(*[points for points, _ in rules], indexing="ij")
    log_w = np.meshgrid(*[lw for _, lw in rules], indexing="ij")
    u = np.stack([g.ravel() for g in grids], axis=1)
    total_log_w = np.sum([lw.ravel() for lw in log_w], axis=0)
    return float(logsumexp(_log_integrand(u, stats, prior) + total_log_w))


def quadrature_log_evidence(
    stats: BlockStats,
    prior: SbmPrior,
    config: QuadratureConfig | None = None,
    center: Sequence[float] | None = None,
) -> float:
    """Log-evidence of the blockmodel by adaptive tensor quadrature.

    Args:
        stats: Block-pair counts.
        prior: Blockmodel prior.
        config: Quadrature settings.
        center: Point in x coordinates used to place the integration
            windows, the MAP when None.

    Returns:
        log of the integral of p0 over (0, 1)^K.

    Raises:
        UnsupportedOperationError: If K exceeds the supported block count.
        NumericError: If the integrand cannot be evaluated.
    """
    config = config or QuadratureConfig()
    if stats.k > config.max_blocks:
        raise UnsupportedOperationError(
            f"quadrature supports K <= {config.max_blocks}, got K={stats.k}"
        )

    x_center = np.asarray(
        map_sbm(stats, prior).x_star if center is None else center, dtype=np.float64
    )
    u_center = np.clip(x_center**2, 1e-300, 1.0 - 1e-16)
    windows = [_axis_window(i, u_center, stats, prior, config) for i in range(stats.k)]
    logger.debug(f"Quadrature windows in u: {windows}")

    panels = config.initial_panels
    previous = _tensor_pass(windows, panels, stats, prior, config)
    for _ in range(config.max_doublings):
        panels *= 2
        if (panels * config.nodes_per_panel) ** stats.k > config.max_points:
            logger.warning(
                f"Quadrature grid limit reached at {panels // 2} panels per axis"
            )
            break
        current = _tensor_pass(windows, panels, stats, prior, config)
        if abs(current - previous) < config.tol:
            return current
        previous = current
    else:
        logger.warning(
            f"Quadrature did not settle to {config.tol:g} after "
            f"{config.max_doublings} doublings"
        )
    return previous
