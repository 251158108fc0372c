"""Pytest configuration and fixtures for Occam tests."""

import os

os.environ.setdefault("OCCAM_LOG_TO_FILE", "0")

import numpy as np  # noqa: E402
import pytest  # noqa: E402
from click.testing import CliRunner  # noqa: E402
from fastapi.testclient import TestClient  # noqa: E402

from occam.api.main import app  # noqa: E402
from occam.cli.main import cli  # noqa: E402
from occam.graphs.models import BlockAssignment, Graph  # noqa: E402


@pytest.fixture
def cli_runner() -> CliRunner:
    """Provide a Click CLI test runner."""
    return CliRunner()


@pytest.fixture
def api_client() -> TestClient:
    """Provide a FastAPI test client."""
    return TestClient(app)


@pytest.fixture
def cli_command():
    """Provide the CLI command group."""
    return cli


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for randomized test inputs."""
    return np.random.default_rng(20240611)


@pytest.fixture
def hand_graph() -> Graph:
    """n_v=3 with loops: edges 1-1, 1-2, 2-3 and 3-3."""
    return Graph.from_edges(3, [(0, 0), (0, 1), (1, 2), (2, 2)], loops_allowed=True)


@pytest.fixture
def hand_assignment() -> BlockAssignment:
    """Blocks {1, 2} and {3}."""
    return BlockAssignment(labels=[1, 1, 2])
