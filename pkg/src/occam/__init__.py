"""Occam - Bayesian evidence model selection for random graphs.

A Python library and CLI that scores Erdos-Renyi, independent-edge and
rank-1 stochastic blockmodels by their marginal likelihood and selects
the model with the largest evidence.
"""

__version__ = "0.1.0"
__author__ = "NicoDevelop"
