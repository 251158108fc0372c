"""Evidence calculations for conjugate exponential families.

Stateless functions implementing the conjugate update, the exact
log-evidence, the flexibility penalty, MAP estimation, the BIC variants,
the Kashyap penalty and hyperparameter matching between nested models.
Everything is evaluated in log space.
"""

import numpy as np
from scipy import integrate, optimize
from scipy.stats import beta as beta_dist

from occam.core.exceptions import (
    BoundaryError,
    DomainError,
    NumericError,
    RankError,
    UndefinedEvidenceError,
    UnsupportedOperationError,
)
from occam.core.expfam.config import NewtonConfig
from occam.core.expfam.families import ExpFamilyModel
from occam.core.expfam.models import (
    RANK_TOLERANCE,
    ConjugateHyper,
    DataSummary,
    NestingMap,
)
from occam.core.logging import get_logger

logger = get_logger("occam.expfam")

DEFAULT_NEWTON_CONFIG = NewtonConfig()


def posterior_update(
    h: ConjugateHyper,
    t_sum: np.ndarray,
    n: int,
) -> ConjugateHyper:
    """Conjugate update (tau, m) -> (tau + sum T, m + n).

    Args:
        h: Prior hyperparameters.
        t_sum: Sum of the observed sufficient statistics.
        n: Number of observations.

    Returns:
        Posterior hyperparameters.

    Raises:
        DomainError: If ``n`` is negative.
    """
    if n < 0:
        raise DomainError("observation count must be nonnegative")
    return ConjugateHyper(tau=h.tau + np.atleast_1d(t_sum), m=h.m + n)


def log_likelihood(
    model: ExpFamilyModel,
    data: DataSummary,
    theta: np.ndarray,
) -> float:
    """Log-likelihood sum log h + <theta, sum T> - n A(theta)."""
    theta = np.atleast_1d(np.asarray(theta, dtype=np.float64))
    return float(
        data.log_h + theta @ data.t_sum - data.n * model.log_partition(theta)
    )


def log_prior_density(
    model: ExpFamilyModel,
    h: ConjugateHyper,
    theta: np.ndarray,
) -> float:
    """Conjugate prior log-density in the canonical (theta) parameterization."""
    theta = np.atleast_1d(np.asarray(theta, dtype=np.float64))
    return float(
        model.log_normalizer(h.tau, h.m) + theta @ h.tau - h.m * model.log_partition(theta)
    )


def bernoulli_log_density_p(h: ConjugateHyper, p: float) -> float:
    """Log-density of the Bernoulli-coordinate prior in the p parameterization.

    The theta-space density equals this density times the Jacobian
    p (1 - p); the prior on p is Beta(tau, m - tau).
    """
    tau = float(h.tau[0])
    return float(beta_dist.logpdf(p, tau, h.m - tau))


def log_evidence(
    model: ExpFamilyModel,
    h: ConjugateHyper,
    data: DataSummary,
) -> float:
    """Exact log-evidence sum log h + log H(tau, m) - log H(posterior).

    Raises:
        UnsupportedOperationError: If the family has no analytic normalizer.
        DomainError: If the hyperparameters are not admissible.
    """
    if data.n == 0:
        return 0.0
    posterior = posterior_update(h, data.t_sum, data.n)
    return float(
        data.log_h
        + model.log_normalizer(h.tau, h.m)
        - model.log_normalizer(posterior.tau, posterior.m)
    )


def flexibility(
    model: ExpFamilyModel,
    h: ConjugateHyper,
    data: DataSummary,
    theta: np.ndarray,
) -> float:
    """Flexibility, the log posterior-to-prior density ratio at theta.

    ``log_evidence == log_likelihood(theta) - flexibility(theta)`` holds for
    every theta in the canonical space.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=np.float64))
    posterior = posterior_update(h, data.t_sum, data.n)
    return float(
        model.log_normalizer(posterior.tau, posterior.m)
        - model.log_normalizer(h.tau, h.m)
        + theta @ data.t_sum
        - data.n * model.log_partition(theta)
    )


def _bracket(
    model: ExpFamilyModel,
    target: float,
    config: NewtonConfig,
) -> tuple[float, float]:
    low, high = -config.bracket_step, config.bracket_step
    for _ in range(config.max_bracket_expansions):
        below = model.log_partition_grad(np.array([low]))[0] - target < 0
        above = model.log_partition_grad(np.array([high]))[0] - target > 0
        if below and above:
            return low, high
        if not below:
            low *= 2.0
        if not above:
            high *= 2.0
    raise BoundaryError(f"no bracket found for mean statistic {target}")


def invert_mean(
    model: ExpFamilyModel,
    target: np.ndarray,
    config: NewtonConfig = DEFAULT_NEWTON_CONFIG,
) -> np.ndarray:
    """Solve A'(theta) = target numerically.

    Rank one uses Newton iteration safeguarded by bisection-type bracketing
    (Brent's method) when Newton fails to reach the tolerance. Higher ranks
    minimize the convex function A(theta) - <target, theta> with a
    trust-region Newton method.

    Args:
        model: Exponential family.
        target: Mean statistic in the interior of the support.
        config: Newton settings.

    Returns:
        The canonical parameter.

    Raises:
        BoundaryError: If no bracketing interval exists (boundary target).
        NumericError: If the solver does not reach the tolerance.
    """
    target = np.atleast_1d(np.asarray(target, dtype=np.float64))

    def residual(theta: np.ndarray) -> np.ndarray:
        return model.log_partition_grad(theta) - target

    if model.rank == 1:
        goal = float(target[0])
        try:
            result = optimize.root_scalar(
                lambda t: residual(np.array([t]))[0],
                fprime=lambda t: model.log_partition_hess(np.array([t]))[0, 0],
                x0=0.0,
                method="newton",
                xtol=1e-15,
                maxiter=config.max_iter,
            )
            theta = np.array([result.root])
            if np.isfinite(theta).all() and abs(residual(theta)[0]) <= config.tol:
                return theta
        except (ArithmeticError, RuntimeError, ValueError):
            pass

        low, high = _bracket(model, goal, config)
        logger.debug(f"Newton fallback to bracket [{low}, {high}] for target {goal}")
        root = optimize.brentq(
            lambda t: residual(np.array([t]))[0],
            low,
            high,
            xtol=1e-15,
            rtol=4 * np.finfo(float).eps,
            maxiter=10 * config.max_iter,
        )
        return np.array([root])

    result = optimize.minimize(
        lambda t: model.log_partition(t) - target @ t,
        x0=np.zeros(model.rank),
        jac=lambda t: residual(t),
        hess=model.log_partition_hess,
        method="trust-exact",
        options={"gtol": config.tol, "maxiter": 10 * config.max_iter},
    )
    theta = result.x
    if not np.isfinite(theta).all() or np.abs(residual(theta)).max() > max(
        config.tol, 1e-9
    ):
        raise NumericError(f"mean inversion did not converge: {result.message}")
    return theta


def map_estimate(
    model: ExpFamilyModel,
    h: ConjugateHyper,
    data: DataSummary,
    method: str = "auto",
    config: NewtonConfig = DEFAULT_NEWTON_CONFIG,
) -> np.ndarray:
    """MAP of the canonical parameter, A'^{-1}((sum T + tau) / (n + m)).

    Args:
        model: Exponential family.
        h: Prior hyperparameters.
        data: Observed summary.
        method: ``"analytic"``, ``"newton"`` or ``"auto"`` (analytic when
            the family provides an inverse mean map).
        config: Newton settings.

    Returns:
        The MAP canonical parameter.

    Raises:
        BoundaryError: If the posterior mean statistic is on the boundary.
        UnsupportedOperationError: If ``method="analytic"`` is unavailable.
    """
    target = (data.t_sum + h.tau) / (data.n + h.m)
    return _invert(model, target, method, config)


def mle_estimate(
    model: ExpFamilyModel,
    data: DataSummary,
    method: str = "auto",
    config: NewtonConfig = DEFAULT_NEWTON_CONFIG,
) -> np.ndarray:
    """Maximum-likelihood canonical parameter A'^{-1}(sum T / n).

    Raises:
        DomainError: If there are no observations.
        BoundaryError: If the average statistic is on the boundary.
    """
    if data.n == 0:
        raise DomainError("MLE requires at least one observation")
    return _invert(model, data.t_sum / data.n, method, config)


def _invert(
    model: ExpFamilyModel,
    target: np.ndarray,
    method: str,
    config: NewtonConfig,
) -> np.ndarray:
    if method not in ("auto", "analytic", "newton"):
        raise DomainError(f"unknown inversion method {method!r}")
    if not model.in_support_interior(target):
        raise BoundaryError(f"mean statistic {target} is on the support boundary")

    if method != "newton":
        theta = model.mean_to_canonical(target)
        if theta is not None:
            return np.atleast_1d(theta)
        if method == "analytic":
            raise UnsupportedOperationError(
                f"{type(model).__name__} has no analytic inverse mean map"
            )
    return invert_mean(model, target, config)


def _check_observations(data: DataSummary) -> None:
    if data.n < 1:
        raise DomainError("BIC requires at least one observation")


def prior_corrected_bic(
    model: ExpFamilyModel,
    h: ConjugateHyper,
    data: DataSummary,
) -> float:
    """Prior-corrected BIC log L(MAP) + log rho(MAP) - (k/2) log n.

    The prior density is the theta-space conjugate density.

    Raises:
        BoundaryError: If the MAP is on the boundary.
    """
    _check_observations(data)
    theta_hat = map_estimate(model, h, data)
    return (
        log_likelihood(model, data, theta_hat)
        + log_prior_density(model, h, theta_hat)
        - 0.5 * model.rank * np.log(data.n)
    )


def bic_plain(model: ExpFamilyModel, data: DataSummary) -> float:
    """BIC log L(MLE) - (k/2) log n.

    Raises:
        BoundaryError: If the MLE is on the boundary.
    """
    _check_observations(data)
    theta_hat = mle_estimate(model, data)
    return log_likelihood(model, data, theta_hat) - 0.5 * model.rank * np.log(data.n)


def kashyap_penalty(
    model: ExpFamilyModel,
    h: ConjugateHyper,
    theta_hat: np.ndarray,
    n: int,
) -> float:
    """Kashyap penalty (k/2) log n - log rho(theta) - 0.5 log|A''(theta) / (2 pi)|.

    Raises:
        NumericError: If the curvature matrix is singular.
    """
    if n < 1:
        raise DomainError("Kashyap penalty requires at least one observation")
    theta_hat = np.atleast_1d(np.asarray(theta_hat, dtype=np.float64))
    sign, log_det = np.linalg.slogdet(model.log_partition_hess(theta_hat) / (2.0 * np.pi))
    if sign <= 0 or not np.isfinite(log_det):
        raise NumericError("curvature matrix is singular at theta_hat")
    return float(
        0.5 * model.rank * np.log(n)
        - log_prior_density(model, h, theta_hat)
        - 0.5 * log_det
    )


def bic_flexibility_gap(
    model: ExpFamilyModel,
    h: ConjugateHyper,
    data: DataSummary,
) -> float:
    """Flexibility at the MAP minus the BIC penalty (k/2) log n.

    For large n this tends to -log rho(theta_0) + 0.5 log|A''(theta_0)/(2 pi)|.
    """
    _check_observations(data)
    theta_hat = map_estimate(model, h, data)
    return flexibility(model, h, data, theta_hat) - 0.5 * model.rank * np.log(data.n)


def flat_prior_log_evidence(model: ExpFamilyModel, data: DataSummary) -> float:
    """Log-evidence under the flat prior on theta: sum log h - log H(sum T, n).

    Raises:
        UndefinedEvidenceError: If H(sum T, n) is undefined, e.g. zero or
            all successes for a Bernoulli coordinate.
    """
    try:
        return float(data.log_h - model.log_normalizer(data.t_sum, float(data.n)))
    except DomainError as e:
        raise UndefinedEvidenceError(f"flat-prior evidence undefined: {e}") from e


def match_down(h: ConjugateHyper, nesting: NestingMap) -> ConjugateHyper:
    """Matched submodel hyperparameters (upsilon, w) = (M tau, m)."""
    if h.rank != nesting.full_rank:
        raise DomainError(f"tau has length {h.rank}, M has {nesting.full_rank} columns")
    return ConjugateHyper(tau=nesting.matrix @ h.tau, m=h.m)


def match_up(
    upsilon: np.ndarray,
    w: float,
    nesting: NestingMap,
) -> ConjugateHyper:
    """Full-model hyperparameters (M^+ upsilon, w) encompassing a submodel prior.

    Raises:
        RankError: If M M^T is numerically singular.
    """
    upsilon = np.atleast_1d(np.asarray(upsilon, dtype=np.float64))
    if upsilon.size != nesting.nested_rank:
        raise DomainError(
            f"upsilon has length {upsilon.size}, M has {nesting.nested_rank} rows"
        )
    singular = np.linalg.svd(nesting.matrix, compute_uv=False)
    if singular[-1] <= RANK_TOLERANCE * singular[0]:
        raise RankError("M M^T is numerically singular")
    return ConjugateHyper(tau=nesting.pseudo_inverse() @ upsilon, m=w)


def encompassing_divergence(
    full: ExpFamilyModel,
    nested: ExpFamilyModel,
    full_hyper: ConjugateHyper,
    nested_hyper: ConjugateHyper,
    nesting: NestingMap,
) -> float:
    """Matching objective -E_N[log rho_F(M^T eta) / rho_N(eta)].

    The expectation is over the nested prior rho_N and is computed by
    one-dimensional quadrature, so the submodel must have rank one. The
    objective is minimized by the matched hyperparameters of ``match_down``.

    Raises:
        UnsupportedOperationError: If the submodel rank is not one.
    """
    if nested.rank != 1:
        raise UnsupportedOperationError("divergence quadrature requires a rank-1 submodel")

    log_g = nested.log_normalizer(nested_hyper.tau, nested_hyper.m)
    log_h = full.log_normalizer(full_hyper.tau, full_hyper.m)
    upsilon, w = float(nested_hyper.tau[0]), nested_hyper.m
    lift = nesting.matrix[0]

    def log_nested(eta: float) -> float:
        return log_g + upsilon * eta - w * nested.log_partition(np.array([eta]))

    def log_full(eta: float) -> float:
        theta = lift * eta
        return log_h + theta @ full_hyper.tau - full_hyper.m * full.log_partition(theta)

    def integrand(eta: float) -> float:
        log_density = log_nested(eta)
        if log_density < -745.0:
            return 0.0
        return float(np.exp(log_density) * (log_density - log_full(eta)))

    peak = float(invert_mean(nested, np.array([upsilon / w]))[0])
    return float(
        sum(
            integrate.quad(integrand, low, high, epsabs=1e-13, epsrel=1e-11, limit=200)[0]
            for low, high in ((-np.inf, peak), (peak, np.inf))
        )
    )
