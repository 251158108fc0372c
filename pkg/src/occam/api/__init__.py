"""API module for Occam.

This module provides a REST API using FastAPI for model selection on
posted graphs and for the IE selection bound.
"""
