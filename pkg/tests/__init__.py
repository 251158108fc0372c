"""Test suite for Occam."""
