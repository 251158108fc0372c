"""Conjugate exponential-family machinery.

This module provides the generic evidence, flexibility and matching
operations together with the Bernoulli families used by the graph models.
"""

from occam.core.expfam.calculator import (
    bernoulli_log_density_p,
    bic_flexibility_gap,
    bic_plain,
    encompassing_divergence,
    flat_prior_log_evidence,
    flexibility,
    invert_mean,
    kashyap_penalty,
    log_evidence,
    log_likelihood,
    log_prior_density,
    map_estimate,
    match_down,
    match_up,
    mle_estimate,
    posterior_update,
    prior_corrected_bic,
)
from occam.core.expfam.config import NewtonConfig
from occam.core.expfam.families import (
    ExpFamilyModel,
    NestedFamily,
    PooledBernoulli,
    ProductBernoulli,
)
from occam.core.expfam.models import ConjugateHyper, DataSummary, NestingMap

__all__ = [
    # Config
    "NewtonConfig",
    # Models
    "ConjugateHyper",
    "DataSummary",
    "NestingMap",
    # Families
    "ExpFamilyModel",
    "NestedFamily",
    "PooledBernoulli",
    "ProductBernoulli",
    # Calculator functions
    "bernoulli_log_density_p",
    "bic_flexibility_gap",
    "bic_plain",
    "encompassing_divergence",
    "flat_prior_log_evidence",
    "flexibility",
    "invert_mean",
    "kashyap_penalty",
    "log_evidence",
    "log_likelihood",
    "log_prior_density",
    "map_estimate",
    "match_down",
    "match_up",
    "mle_estimate",
    "posterior_update",
    "prior_corrected_bic",
]
