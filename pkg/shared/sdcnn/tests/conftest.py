"""
Pytest configuration for sdcnn tests.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add shared/ to the path so `sdcnn` and `schemas` import without installing
shared_dir = Path(__file__).parent.parent.parent
sys.path.insert(0, str(shared_dir))

from sdcnn.discovery import discover_tasks, reset_discovery  # noqa: E402
from sdcnn.decorator import clear_registry  # noqa: E402
from sdcnn.graph import generate_synthetic  # noqa: E402
from sdcnn.sparse import SparseMatrix, from_triplets  # noqa: E402


def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line("markers", "slow: marks tests as slow running")


def path_adjacency(n: int) -> SparseMatrix:
    """Unweighted path graph 0-1-...-(n-1), both directions stored."""
    triplets = [(i, i + 1, 1.0) for i in range(n - 1)] + [(i + 1, i, 1.0) for i in range(n - 1)]
    return from_triplets(triplets, n, n)


def random_stochastic(n: int, density: float, seed: int) -> SparseMatrix:
    """Random row-stochastic matrix; every row keeps at least one entry."""
    rng = np.random.default_rng(seed)
    dense = rng.random((n, n)) * (rng.random((n, n)) < density)
    dense[np.arange(n), rng.integers(0, n, size=n)] += 0.5
    dense /= dense.sum(axis=1, keepdims=True)
    return SparseMatrix.from_dense(dense)


@pytest.fixture
def separable_sbm():
    """Two well-separated communities with strongly class-correlated features."""
    return generate_synthetic(
        "sbm",
        {"n_nodes": 120, "n_blocks": 2, "p_in": 0.2, "p_out": 0.01,
         "n_features": 4, "signal": 3.0, "noise": 0.5},
        seed=0,
    )


@pytest.fixture
def noise_sbm():
    """Communities whose features carry no class information."""
    return generate_synthetic(
        "sbm",
        {"n_nodes": 60, "n_blocks": 2, "p_in": 0.3, "p_out": 0.05,
         "n_features": 4, "features": "noise"},
        seed=0,
    )


@pytest.fixture
def write_config(tmp_path):
    """Write INI text to tmp_path/<name> and return the path."""

    def write(text: str, name: str = "run.ini") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write


@pytest.fixture
def fresh_registry():
    """Empty task registry for the test; repopulated afterwards."""
    clear_registry()
    reset_discovery()
    yield
    clear_registry()
    reset_discovery()
    discover_tasks()


@pytest.fixture
def path_graph():
    """Factory for path-graph adjacencies."""
    return path_adjacency


@pytest.fixture
def stochastic():
    """Factory for random row-stochastic matrices."""
    return random_stochastic
