"""Canonical exponential families.

This module defines the abstract family interface used by the generic
evidence machinery and its Bernoulli instantiations:

* ``ProductBernoulli`` - k independent Bernoulli coordinates, the full
  independent-edge model when one observation is a whole graph.
* ``PooledBernoulli`` - a single canonical parameter shared by ``size``
  coordinates, the Erdos-Renyi model with per-graph log-partition
  ``size * log(1 + e^eta)``.
* ``NestedFamily`` - the submodel theta = M^T eta of any family.
"""

from abc import ABC, abstractmethod

import numpy as np
from scipy import integrate
from scipy.special import betaln, expit, logit

from occam.core.exceptions import DomainError, UnsupportedOperationError
from occam.core.expfam.models import ConjugateHyper, DataSummary, NestingMap


class ExpFamilyModel(ABC):
    """A canonical exponential family of rank k.

    Densities have the form ``h(x) exp(<theta, T(x)> - A(theta))`` with A
    convex and twice differentiable on the open canonical space.
    """

    rank: int

    @abstractmethod
    def log_partition(self, theta: np.ndarray) -> float:
        """Log-partition A(theta)."""

    @abstractmethod
    def log_partition_grad(self, theta: np.ndarray) -> np.ndarray:
        """Gradient of A, the mean of T(X)."""

    @abstractmethod
    def log_partition_hess(self, theta: np.ndarray) -> np.ndarray:
        """Hessian of A, the covariance of T(X)."""

    @abstractmethod
    def sufficient_stat(self, x: np.ndarray) -> np.ndarray:
        """Sufficient statistic T(x) of one observation."""

    @abstractmethod
    def in_support_interior(self, mu: np.ndarray) -> bool:
        """Whether a mean statistic lies in the interior of the support."""

    def log_base_measure(self, x: np.ndarray) -> float:  # noqa: ARG002
        """Log base measure log h(x); zero unless overridden."""
        return 0.0

    def log_normalizer(self, tau: np.ndarray, m: float) -> float:
        """Log normalizer log H(tau, m) of the conjugate prior.

        Raises:
            UnsupportedOperationError: If no normalizer is available.
        """
        raise UnsupportedOperationError(
            f"{type(self).__name__} has no analytic conjugate normalizer"
        )

    def mean_to_canonical(self, mu: np.ndarray) -> np.ndarray | None:  # noqa: ARG002
        """Analytic inverse of the mean map, or None when unavailable."""
        return None

    def summarize(self, observations: np.ndarray) -> DataSummary:
        """Reduce observations (one per row) to their sufficient summary."""
        rows = np.asarray(observations, dtype=np.float64)
        if rows.ndim == 1:
            rows = rows.reshape(-1, 1) if self.rank == 1 else rows.reshape(1, -1)
        stats = np.array([self.sufficient_stat(row) for row in rows]).reshape(
            -1, self.rank
        )
        return DataSummary(
            t_sum=stats.sum(axis=0),
            n=rows.shape[0],
            log_h=float(sum(self.log_base_measure(row) for row in rows)),
        )

    def check_hyper(self, h: ConjugateHyper) -> None:
        """Check that tau / m lies in the interior of the support.

        Raises:
            DomainError: If the rank differs or tau / m is not interior.
        """
        if h.rank != self.rank:
            raise DomainError(f"hyperparameter rank {h.rank} != model rank {self.rank}")
        if not self.in_support_interior(h.mean_statistic):
            raise DomainError("tau / m must lie in the interior of the support of T")


class ProductBernoulli(ExpFamilyModel):
    """Product of k independent Bernoulli coordinates.

    A(theta) = sum log(1 + e^theta_i), T(x) = x, h = 1. The conjugate prior
    factorizes into Beta(tau_i, m - tau_i) laws on the success probabilities.
    """

    def __init__(self, rank: int = 1) -> None:
        if rank < 1:
            raise DomainError("rank must be positive")
        self.rank = rank

    def log_partition(self, theta: np.ndarray) -> float:
        return float(np.logaddexp(0.0, np.asarray(theta, dtype=np.float64)).sum())

    def log_partition_grad(self, theta: np.ndarray) -> np.ndarray:
        return expit(np.asarray(theta, dtype=np.float64))

    def log_partition_hess(self, theta: np.ndarray) -> np.ndarray:
        p = expit(np.asarray(theta, dtype=np.float64))
        return np.diag(np.atleast_1d(p * (1.0 - p)))

    def sufficient_stat(self, x: np.ndarray) -> np.ndarray:
        return np.atleast_1d(np.asarray(x, dtype=np.float64))

    def in_support_interior(self, mu: np.ndarray) -> bool:
        mu = np.atleast_1d(mu)
        return bool(((mu > 0.0) & (mu < 1.0)).all())

    def log_normalizer(self, tau: np.ndarray, m: float) -> float:
        tau = np.atleast_1d(np.asarray(tau, dtype=np.float64))
        if not ((tau > 0.0) & (tau < m)).all():
            raise DomainError("Bernoulli normalizer requires 0 < tau_i < m")
        return float(-betaln(tau, m - tau).sum())

    def mean_to_canonical(self, mu: np.ndarray) -> np.ndarray:
        return logit(np.atleast_1d(np.asarray(mu, dtype=np.float64)))

    def support_range(self, row: np.ndarray) -> tuple[float, float]:
        """Range of <row, x> over the hypercube of Bernoulli outcomes."""
        row = np.asarray(row, dtype=np.float64)
        return float(np.minimum(row, 0.0).sum()), float(np.maximum(row, 0.0).sum())


class PooledBernoulli(ExpFamilyModel):
    """One canonical parameter shared by ``size`` Bernoulli coordinates.

    One observation is a 0/1 vector of length ``size`` (a whole graph), so
    T(x) = sum x and the per-observation log-partition is
    ``size * log(1 + e^eta)``. The conjugate prior on p = expit(eta) is
    Beta(upsilon, size * w - upsilon).
    """

    rank = 1

    def __init__(self, size: int) -> None:
        if size < 1:
            raise DomainError("size must be positive")
        self.size = size

    def log_partition(self, theta: np.ndarray) -> float:
        return float(self.size * np.logaddexp(0.0, np.asarray(theta).item()))

    def log_partition_grad(self, theta: np.ndarray) -> np.ndarray:
        return np.atleast_1d(self.size * expit(np.asarray(theta, dtype=np.float64)))

    def log_partition_hess(self, theta: np.ndarray) -> np.ndarray:
        p = float(expit(np.asarray(theta).item()))
        return np.array([[self.size * p * (1.0 - p)]])

    def sufficient_stat(self, x: np.ndarray) -> np.ndarray:
        return np.array([float(np.sum(x))])

    def in_support_interior(self, mu: np.ndarray) -> bool:
        value = float(np.asarray(mu).item())
        return 0.0 < value < self.size

    def log_normalizer(self, tau: np.ndarray, m: float) -> float:
        upsilon = float(np.asarray(tau).item())
        if not 0.0 < upsilon < self.size * m:
            raise DomainError("pooled normalizer requires 0 < upsilon < size * w")
        return float(-betaln(upsilon, self.size * m - upsilon))

    def mean_to_canonical(self, mu: np.ndarray) -> np.ndarray:
        return np.atleast_1d(logit(np.asarray(mu, dtype=np.float64) / self.size))

    def summarize(self, observations: np.ndarray) -> DataSummary:
        rows = np.atleast_2d(np.asarray(observations, dtype=np.float64))
        return DataSummary(t_sum=[rows.sum()], n=rows.shape[0])


class NestedFamily(ExpFamilyModel):
    """The submodel theta = M^T eta of a full family.

    B(eta) = A(M^T eta), its gradient M A'(M^T eta) and Hessian
    M A''(M^T eta) M^T. The conjugate normalizer G(upsilon, w) is computed
    by one-dimensional quadrature when l = 1 and is unavailable otherwise.
    """

    def __init__(self, full: ExpFamilyModel, nesting: NestingMap) -> None:
        if nesting.full_rank != full.rank:
            raise DomainError(
                f"nesting map has {nesting.full_rank} columns, model rank is {full.rank}"
            )
        self.full = full
        self.nesting = nesting
        self.rank = nesting.nested_rank

    def _lift(self, eta: np.ndarray) -> np.ndarray:
        return self.nesting.matrix.T @ np.atleast_1d(np.asarray(eta, dtype=np.float64))

    def log_partition(self, theta: np.ndarray) -> float:
        return self.full.log_partition(self._lift(theta))

    def log_partition_grad(self, theta: np.ndarray) -> np.ndarray:
        return self.nesting.matrix @ self.full.log_partition_grad(self._lift(theta))

    def log_partition_hess(self, theta: np.ndarray) -> np.ndarray:
        m = self.nesting.matrix
        return m @ self.full.log_partition_hess(self._lift(theta)) @ m.T

    def sufficient_stat(self, x: np.ndarray) -> np.ndarray:
        return self.nesting.matrix @ self.full.sufficient_stat(x)

    def log_base_measure(self, x: np.ndarray) -> float:
        return self.full.log_base_measure(x)

    def in_support_interior(self, mu: np.ndarray) -> bool:
        if self.rank == 1 and isinstance(self.full, ProductBernoulli):
            low, high = self.full.support_range(self.nesting.matrix[0])
            return low < float(np.asarray(mu).item()) < high
        # no closed-form support; the Newton inversion reports failure
        return True

    def log_normalizer(self, tau: np.ndarray, m: float) -> float:
        if self.rank != 1:
            raise UnsupportedOperationError(
                "nested normalizer is only available for one-dimensional submodels"
            )
        # deferred: calculator imports this module
        from occam.core.expfam.calculator import invert_mean

        upsilon = float(np.asarray(tau).item())
        if not self.in_support_interior(np.array([upsilon / m])):
            raise DomainError("upsilon / w must lie in the interior of the support")

        def log_kernel(eta: float) -> float:
            return upsilon * eta - m * self.log_partition(np.array([eta]))

        peak = float(invert_mean(self, np.array([upsilon / m]))[0])
        offset = log_kernel(peak)
        value = sum(
            integrate.quad(
                lambda eta: np.exp(log_kernel(eta) - offset),
                low,
                high,
                epsabs=0.0,
                epsrel=1e-12,
                limit=200,
            )[0]
            for low, high in ((-np.inf, peak), (peak, np.inf))
        )
        return float(-(np.log(value) + offset))
