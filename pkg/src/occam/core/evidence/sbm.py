"""Evidence of the rank-1 K-block stochastic blockmodel.

The unnormalized posterior p0 of the latent block positions x in (0, 1)^K
is evaluated in log space together with its analytic gradient and
Hessian. The MAP is found by projected gradient ascent and the evidence
by a Laplace approximation; complete graphs have a closed form.
"""

import numpy as np
from scipy import integrate, optimize
from scipy.special import betaln, digamma
from scipy.stats import beta as beta_dist

from occam.core.evidence.config import SbmOptimizerConfig
from occam.core.evidence.er_ie import UNIFORM_PRIOR
from occam.core.evidence.models import BetaParams, LaplaceResult, SbmPrior
from occam.core.exceptions import ApproximationInvalidError, DomainError, NumericError
from occam.core.logging import get_logger
from occam.graphs.models import BlockStats

logger = get_logger("occam.evidence.sbm")

LOG_2PI = float(np.log(2.0 * np.pi))
COMPLETE_GRAPH_PRIOR = BetaParams(alpha=2.0, beta=1.0)


def fit_induced_component(er_prior: BetaParams) -> BetaParams:
    """Beta law on x closest in KL to the law of sqrt(p) for p ~ er_prior.

    Minimizes log B(a, b) - (a - 1) E[log x] - (b - 1) E[log(1 - x)]
    over a, b > 0, with the expectations taken under x = sqrt(p).

    Args:
        er_prior: Prior on the ER edge probability.

    Returns:
        The fitted Beta(a, b).

    Raises:
        NumericError: If the minimization fails.
    """
    a, b = er_prior.alpha, er_prior.beta
    mean_log_x = 0.5 * (digamma(a) - digamma(a + b))
    mean_log_1mx, _ = integrate.quad(
        lambda p: np.log1p(-np.sqrt(p)) * beta_dist.pdf(p, a, b), 0.0, 1.0, limit=200
    )

    def objective(log_shapes: np.ndarray) -> tuple[float, np.ndarray]:
        shape_a, shape_b = np.exp(log_shapes)
        value = (
            betaln(shape_a, shape_b)
            - (shape_a - 1.0) * mean_log_x
            - (shape_b - 1.0) * mean_log_1mx
        )
        total = digamma(shape_a + shape_b)
        grad = np.array(
            [
                shape_a * (digamma(shape_a) - total - mean_log_x),
                shape_b * (digamma(shape_b) - total - mean_log_1mx),
            ]
        )
        return float(value), grad

    result = optimize.minimize(
        objective, x0=np.log([2.0, 1.0]), jac=True, method="BFGS", options={"gtol": 1e-12}
    )
    if not np.all(np.isfinite(result.x)):
        raise NumericError(f"induced prior fit failed: {result.message}")
    shape_a, shape_b = np.exp(result.x)
    return BetaParams(alpha=float(shape_a), beta=float(shape_b))


def induced_sbm_prior(k: int, er_prior: BetaParams = UNIFORM_PRIOR) -> SbmPrior:
    """Blockmodel prior induced from an ER prior by encompassing-prior matching.

    The uniform ER prior induces exactly Beta(2, 1) on every block position.

    Raises:
        DomainError: If ``k < 1``.
    """
    if k < 1:
        raise DomainError(f"K must be at least 1, got {k}")
    component = COMPLETE_GRAPH_PRIOR if er_prior.is_uniform else fit_induced_component(er_prior)
    return SbmPrior.repeated(component, k)


def _check_prior(stats: BlockStats, prior: SbmPrior) -> None:
    if prior.k != stats.k:
        raise DomainError(f"prior has {prior.k} components for K={stats.k} blocks")


def log_p0_batch(points: np.ndarray, stats: BlockStats, prior: SbmPrior) -> np.ndarray:
    """log p0 at each row of an (N, K) array of latent positions.

    Rows with a coordinate outside the open unit interval get -inf.
    """
    _check_prior(stats, prior)
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if points.shape[1] != stats.k:
        raise DomainError(f"points must have {stats.k} columns")

    inside = np.all((points > 0.0) & (points < 1.0), axis=1)
    x = np.where(inside[:, None], points, 0.5)

    exponents = stats.x_exponents.astype(np.float64) + prior.alphas - 1.0
    o = stats.o.astype(np.float64)
    values = (
        np.log(x) @ exponents
        + np.log1p(-x * x) @ np.diag(o)
        + np.log1p(-x) @ (prior.betas - 1.0)
    )
    for i, j in zip(*np.nonzero(np.triu(o, k=1)), strict=True):
        values += o[i, j] * np.log1p(-x[:, i] * x[:, j])
    values -= float(np.sum(betaln(prior.alphas, prior.betas)))

    values[~inside] = -np.inf
    return values


def log_p0(x: np.ndarray, stats: BlockStats, prior: SbmPrior) -> float:
    """Log of the unnormalized blockmodel posterior p0(x).

    Args:
        x: Latent positions, one per block.
        stats: Block-pair edge and non-edge counts.
        prior: Independent Beta priors on the positions.

    Returns:
        sum_i [(e_i + alpha_i - 1) log x_i + O_ii log(1 - x_i^2)
        + (beta_i - 1) log(1 - x_i)] + sum_{i<j} O_ij log(1 - x_i x_j)
        - sum_i log B(alpha_i, beta_i), with e_i = 2 S_ii + sum_{j != i} S_ij.
        Boundary points give -inf.
    """
    return float(log_p0_batch(np.asarray(x, dtype=np.float64)[None, :], stats, prior)[0])


def _interior(x: np.ndarray, stats: BlockStats, prior: SbmPrior) -> np.ndarray:
    _check_prior(stats, prior)
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (stats.k,):
        raise DomainError(f"x must have {stats.k} entries")
    if np.any(x <= 0.0) or np.any(x >= 1.0):
        raise NumericError(f"derivatives of log p0 undefined on the boundary: x={x}")
    return x


def grad_log_p0(x: np.ndarray, stats: BlockStats, prior: SbmPrior) -> np.ndarray:
    """Analytic gradient of log p0.

    Raises:
        NumericError: If x is on the boundary.
    """
    x = _interior(x, stats, prior)
    exponents = stats.x_exponents + prior.alphas - 1.0
    o = stats.o.astype(np.float64)
    o_diag = np.diag(o)
    cross = o - np.diag(o_diag)
    denominators = 1.0 - np.outer(x, x)
    return (
        exponents / x
        - (prior.betas - 1.0) / (1.0 - x)
        - 2.0 * o_diag * x / (1.0 - x * x)
        - (cross * x[None, :] / denominators).sum(axis=1)
    )


def hessian_log_p0(x: np.ndarray, stats: BlockStats, prior: SbmPrior) -> np.ndarray:
    """Analytic Hessian of log p0; J is its negative.

    Raises:
        NumericError: If x is on the boundary.
    """
    x = _interior(x, stats, prior)
    exponents = stats.x_exponents + prior.alphas - 1.0
    o = stats.o.astype(np.float64)
    o_diag = np.diag(o)
    cross = o - np.diag(o_diag)
    squared = (1.0 - np.outer(x, x)) ** 2

    hessian = -cross / squared
    diagonal = (
        -exponents / x**2
        - (prior.betas - 1.0) / (1.0 - x) ** 2
        - 2.0 * (1.0 + x * x) * o_diag / (1.0 - x * x) ** 2
        - (cross * (x**2)[None, :] / squared).sum(axis=1)
    )
    np.fill_diagonal(hessian, diagonal)
    return hessian


def initial_point(stats: BlockStats, config: SbmOptimizerConfig | None = None) -> np.ndarray:
    """Method-of-moments start sqrt(S_ii / (S_ii + O_ii)), 0.5 when undefined."""
    config = config or SbmOptimizerConfig()
    within_s = np.diag(stats.s).astype(np.float64)
    within_total = within_s + np.diag(stats.o)
    start = np.full(stats.k, 0.5)
    defined = within_total > 0
    start[defined] = np.sqrt(within_s[defined] / within_total[defined])
    return np.clip(start, config.init_low, config.init_high)


def _projected_gradient(x: np.ndarray, grad: np.ndarray, low: float, high: float) -> np.ndarray:
    pinned = ((x <= low) & (grad < 0)) | ((x >= high) & (grad > 0))
    return np.where(pinned, 0.0, grad)


def _newton_direction(
    x: np.ndarray, projected: np.ndarray, stats: BlockStats, prior: SbmPrior
) -> np.ndarray | None:
    """Solve J_ff d_f = g_f on the free coordinates, None where J_ff is not PD."""
    free = projected != 0.0
    if not np.any(free):
        return None
    j_free = -hessian_log_p0(x, stats, prior)[np.ix_(free, free)]
    try:
        factor = np.linalg.cholesky(j_free)
    except np.linalg.LinAlgError:
        return None
    direction = np.zeros_like(x)
    direction[free] = np.linalg.solve(factor.T, np.linalg.solve(factor, projected[free]))
    return direction


def map_sbm(
    stats: BlockStats,
    prior: SbmPrior,
    config: SbmOptimizerConfig | None = None,
) -> LaplaceResult:
    """Projected ascent on log p0 over [eps, 1 - eps]^K.

    Each iteration tries a projected Newton step on the free coordinates
    when J is positive definite there, and the gradient step otherwise,
    backtracking until the Armijo condition holds. Once the predicted
    increase is below the rounding noise of log p0, a trial is accepted
    if it shrinks the projected gradient instead. A search that stalls at
    that noise floor counts as converged when the projected gradient is
    below ``stall_tol * max(1, |log p0|)``.

    Args:
        stats: Block-pair counts.
        prior: Blockmodel prior.
        config: Optimizer settings.

    Returns:
        A LaplaceResult with x_star, log_p0_at_max, converged, iterations
        and boundary_flag filled in.
    """
    config = config or SbmOptimizerConfig()
    low, high = config.domain_epsilon, 1.0 - config.domain_epsilon

    x = initial_point(stats, config)
    value = log_p0(x, stats, prior)
    grad = grad_log_p0(x, stats, prior)
    projected = _projected_gradient(x, grad, low, high)

    def line_search(direction: np.ndarray, roundoff: float) -> tuple | None:
        step = config.initial_step
        while step >= config.min_step:
            trial = np.clip(x + step * direction, low, high)
            increase = config.armijo * float(grad @ (trial - x))
            trial_value = log_p0(trial, stats, prior)
            trial_grad = grad_log_p0(trial, stats, prior)
            trial_projected = _projected_gradient(trial, trial_grad, low, high)
            if trial_value >= value + increase:
                return trial, trial_value, trial_grad, trial_projected
            if increase <= roundoff and np.linalg.norm(trial_projected) < np.linalg.norm(
                projected
            ):
                return trial, trial_value, trial_grad, trial_projected
            step *= config.shrink
        return None

    iterations = 0
    converged = bool(np.max(np.abs(projected)) < config.tol)
    while not converged and iterations < config.max_iter:
        roundoff = 8.0 * np.finfo(np.float64).eps * max(1.0, abs(value))
        accepted = None
        newton = _newton_direction(x, projected, stats, prior)
        if newton is not None:
            accepted = line_search(newton, roundoff)
        if accepted is None:
            accepted = line_search(grad, roundoff)

        if accepted is None:
            size = float(np.max(np.abs(projected)))
            converged = size <= config.stall_tol * max(1.0, abs(value))
            logger.debug(
                f"Line search stalled after {iterations} iterations at x={x} "
                f"(projected gradient {size:.3e})"
            )
            break
        x, value, grad, projected = accepted
        iterations += 1
        converged = bool(np.max(np.abs(projected)) < config.tol)

    if not converged:
        logger.warning(
            f"Projected ascent stopped after {iterations} iterations "
            f"(projected gradient {np.max(np.abs(projected)):.3e})"
        )
    return LaplaceResult(
        x_star=x,
        log_p0_at_max=value,
        converged=converged,
        iterations=iterations,
        boundary_flag=bool(np.any(x <= low) or np.any(x >= high)),
    )


def log_det_negative_hessian(hessian: np.ndarray) -> float:
    """log det J for J = -hessian, through its Cholesky factor.

    Raises:
        ApproximationInvalidError: If J is not positive definite.
    """
    try:
        factor = np.linalg.cholesky(-np.asarray(hessian, dtype=np.float64))
    except np.linalg.LinAlgError as e:
        raise ApproximationInvalidError("negative Hessian is not positive definite") from e
    return float(2.0 * np.sum(np.log(np.diag(factor))))


def laplace_at(result: LaplaceResult, stats: BlockStats, prior: SbmPrior) -> LaplaceResult:
    """Complete a MAP search result with log det J and the Laplace log-evidence.

    Raises:
        ApproximationInvalidError: If the MAP is not an interior converged
            point or J is not positive definite.
    """
    if not result.converged:
        raise ApproximationInvalidError(
            f"gradient ascent did not converge in {result.iterations} iterations"
        )
    if result.boundary_flag:
        raise ApproximationInvalidError(f"MAP on the domain boundary: x*={result.x_star}")

    log_det_j = log_det_negative_hessian(hessian_log_p0(np.array(result.x_star), stats, prior))
    log_evidence = result.log_p0_at_max + 0.5 * stats.k * LOG_2PI - 0.5 * log_det_j
    return result.model_copy(update={"log_det_j": log_det_j, "log_evidence": log_evidence})


def laplace_log_evidence(
    stats: BlockStats,
    prior: SbmPrior,
    config: SbmOptimizerConfig | None = None,
) -> LaplaceResult:
    """Laplace log-evidence log p0(x*) + (K/2) log 2 pi - 0.5 log det J.

    Raises:
        ApproximationInvalidError: If the MAP is not an interior converged
            point or J is not positive definite.
    """
    return laplace_at(map_sbm(stats, prior, config), stats, prior)


def complete_graph_log_evidence(stats: BlockStats, prior: SbmPrior | None = None) -> float:
    """Closed-form evidence K log 2 - sum_i log(e_i + 2) of a complete graph.

    Raises:
        DomainError: If some block pair has a missing edge or the prior is
            not Beta(2, 1) on every block.
    """
    if not stats.is_complete:
        raise DomainError("complete-graph evidence needs O = 0 for every block pair")
    if prior is not None and any(c != COMPLETE_GRAPH_PRIOR for c in prior.components):
        raise DomainError("complete-graph evidence needs Beta(2, 1) priors")
    return float(stats.k * np.log(2.0) - np.sum(np.log(stats.x_exponents + 2.0)))
