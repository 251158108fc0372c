"""Closed-form evidence for the Erdos-Renyi and independent-edge models.

Pure calculation functions for beta-Bernoulli log-evidences, the ER MAP,
the IE-versus-ER Bayes factor, the IE BIC and the lower bound on the
probability that the evidence selects IE. All binomial and beta terms
are evaluated through log-gamma.
"""

from collections.abc import Sequence

import numpy as np
from scipy.special import betaln, gammaln, xlog1py, xlogy
from scipy.stats import beta as beta_dist
from scipy.stats import chi2

from occam.core.evidence.models import BetaParams, EdgeSummary, IeBoundConditions
from occam.core.exceptions import DomainError, UndefinedModeError
from occam.core.logging import get_logger
from occam.graphs.models import possible_edges

logger = get_logger("occam.evidence.er_ie")

UNIFORM_PRIOR = BetaParams(alpha=1.0, beta=1.0)

# Constants of the IE selection bound
BOUND_EPS_FACTOR = 3.166
BOUND_P_FACTOR = 1.5830


def matched_ie_prior(n: int) -> BetaParams:
    """Per-edge Beta(1/n, 1/n) prior matched to the uniform ER prior.

    Raises:
        DomainError: If ``n < 1``.
    """
    if n < 1:
        raise DomainError("matched IE prior needs at least one possible edge")
    return BetaParams(alpha=1.0 / n, beta=1.0 / n)


def log_binomial(n: int, s: int) -> float:
    """log C(n, s) via log-gamma."""
    return float(gammaln(n + 1) - gammaln(s + 1) - gammaln(n - s + 1))


def log_evidence_er(es: EdgeSummary, prior: BetaParams = UNIFORM_PRIOR) -> float:
    """ER log-evidence log B(alpha + s, beta + n - s) - log B(alpha, beta).

    Args:
        es: Edge counts.
        prior: Beta prior on the common edge probability.

    Returns:
        The log-evidence. Equals -log((n + 1) C(n, s)) for the uniform prior.
    """
    return float(
        betaln(prior.alpha + es.s, prior.beta + es.n - es.s)
        - betaln(prior.alpha, prior.beta)
    )


def map_er(es: EdgeSummary, prior: BetaParams = UNIFORM_PRIOR) -> float:
    """Posterior mode of the ER edge probability, clamped to [0, 1].

    Raises:
        UndefinedModeError: If alpha + beta + n <= 2.
    """
    denominator = prior.alpha + prior.beta + es.n - 2.0
    if denominator <= 0:
        raise UndefinedModeError(
            f"posterior mode undefined: alpha + beta + n = {denominator + 2.0} <= 2"
        )
    mode = (prior.alpha + es.s - 1.0) / denominator
    return float(min(max(mode, 0.0), 1.0))


def log_evidence_er_via_map(
    es: EdgeSummary,
    prior: BetaParams = UNIFORM_PRIOR,
    at: float | None = None,
) -> float:
    """ER log-evidence through log f(A|p) - log rho(p|A) + log rho(p).

    The identity holds at any interior p; by default the MAP is used. A
    boundary evaluation point falls back to ``log_evidence_er``.

    Args:
        es: Edge counts.
        prior: Beta prior on the edge probability.
        at: Evaluation point in (0, 1), the MAP when None.

    Returns:
        The log-evidence.
    """
    p = map_er(es, prior) if at is None else float(at)
    if not 0.0 < p < 1.0:
        logger.debug(f"Evaluation point p={p} on the boundary, using closed form")
        return log_evidence_er(es, prior)

    log_likelihood = xlogy(es.s, p) + xlog1py(es.n - es.s, -p)
    log_posterior = beta_dist.logpdf(p, prior.alpha + es.s, prior.beta + es.n - es.s)
    log_prior = beta_dist.logpdf(p, prior.alpha, prior.beta)
    return float(log_likelihood - log_posterior + log_prior)


def log_evidence_ie(
    a: np.ndarray,
    priors: BetaParams | Sequence[BetaParams],
) -> float:
    """IE log-evidence of the edge indicators under independent Beta priors.

    Args:
        a: Edge indicator vector a_i.
        priors: One BetaParams per indicator, or one shared by all.

    Returns:
        sum a_i log(alpha_i / (alpha_i + beta_i))
        + sum (1 - a_i) log(beta_i / (alpha_i + beta_i)).

    Raises:
        DomainError: If the number of priors differs from the indicators.
    """
    indicators = np.asarray(a, dtype=np.float64).ravel()
    if isinstance(priors, BetaParams):
        alphas = np.full(indicators.size, priors.alpha)
        betas = np.full(indicators.size, priors.beta)
    else:
        if len(priors) != indicators.size:
            raise DomainError(
                f"{len(priors)} priors for {indicators.size} edge indicators"
            )
        alphas = np.array([p.alpha for p in priors], dtype=np.float64)
        betas = np.array([p.beta for p in priors], dtype=np.float64)

    totals = np.log(alphas + betas)
    return float(
        np.sum(indicators * (np.log(alphas) - totals))
        + np.sum((1.0 - indicators) * (np.log(betas) - totals))
    )


def log_bayes_factor_ie_er(es: EdgeSummary, lam: float) -> float:
    """Log Bayes factor of IE (common prior mean lam) over uniform-prior ER.

    Args:
        es: Edge counts.
        lam: Common prior mean of the IE edge probabilities.

    Returns:
        s log lam + (n - s) log(1 - lam) + log(n + 1) + log C(n, s).

    Raises:
        DomainError: If ``lam`` is outside (0, 1).
    """
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lambda must lie in (0, 1), got {lam}")
    return float(
        xlogy(es.s, lam)
        + xlog1py(es.n - es.s, -lam)
        + np.log(es.n + 1.0)
        + log_binomial(es.n, es.s)
    )


def bic_ie(n_v: int, loops_allowed: bool = True) -> float:
    """BIC of the IE model, -(n/2) log n_v, independent of the adjacency.

    Raises:
        DomainError: If ``n_v < 1``.
    """
    if n_v < 1:
        raise DomainError("n_v must be positive")
    return float(-0.5 * possible_edges(n_v, loops_allowed) * np.log(n_v))


def _check_bound_inputs(n: int, eps: float, delta: float) -> None:
    if n < 2:
        raise DomainError("the IE selection bound needs n >= 2")
    if delta <= 0:
        raise DomainError(f"delta must be positive, got {delta}")
    threshold = BOUND_EPS_FACTOR / np.sqrt(n)
    if eps <= threshold:
        raise DomainError(f"eps must exceed 3.166/sqrt(n) = {threshold:.6g}, got {eps}")


def ie_selection_lower_bound(n: int, eps: float, delta: float) -> float:
    """Lower bound on the probability that the evidence selects IE.

    Args:
        n: Number of possible edges.
        eps: Slack, required to exceed 3.166 / sqrt(n).
        delta: Concentration parameter, positive.

    Returns:
        P(Z^2 <= (1 - n^(-delta/2))^2 log n) - eps for standard normal Z.

    Raises:
        DomainError: If a precondition is violated.
    """
    _check_bound_inputs(n, eps, delta)
    threshold = (1.0 - n ** (-delta / 2.0)) ** 2 * np.log(n)
    return float(chi2.cdf(threshold, df=1) - eps)


def ie_selection_conditions(n: int, eps: float, delta: float) -> IeBoundConditions:
    """The lower bound together with the edge-probability bands it assumes.

    Raises:
        DomainError: If a precondition is violated.
    """
    bound = ie_selection_lower_bound(n, eps, delta)
    min_p = BOUND_P_FACTOR / (eps * np.sqrt(n))
    spread = np.sqrt(n ** (1.0 - delta) * np.log(n))
    return IeBoundConditions(
        n=n,
        eps=eps,
        delta=delta,
        lower_bound=bound,
        min_edge_probability=float(min_p),
        max_edge_probability=float(1.0 - min_p),
        edge_sum_low=float((n - spread) / 2.0),
        edge_sum_high=float((n + spread) / 2.0),
    )
