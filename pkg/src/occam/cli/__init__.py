"""CLI module for Occam.

This module provides the command-line interface for model selection on
graph files, simulation sweeps and the IE selection bound.
"""
