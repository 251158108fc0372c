"""Tests for the API module."""
