"""Pytest fixtures for levelness tests."""

import pytest

from levelness.config import EngineConfig


def pytest_addoption(parser):
    """Add command line option to run slow tests."""
    parser.addoption(
        "--run-slow",
        action="store_true",
        default=False,
        help="Run slow tests (large resolutions, exhaustive sweeps, full harness)",
    )


def pytest_collection_modifyitems(config, items):
    """Skip slow tests unless --run-slow is passed."""
    if config.getoption("--run-slow"):
        return

    skip_slow = pytest.mark.skip(reason="Need --run-slow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


# Monomial quotient of dimension one, type two, not level, trace = m
SAMPLE_MONOMIAL_IDEAL = {
    "type": "ideal",
    "variables": ["x", "y", "z"],
    "generators": ["x*z", "y*z", "y^3"],
}

# Non-toric prime of three cubics with h-vector (1, 2, 3, 1)
SAMPLE_PRIME_CUBICS = {
    "type": "ideal",
    "variables": ["x", "y", "z"],
    "generators": ["x*z^2 - y^3", "x^3 + x*y^2 - y^2*z", "x^2*y + y^3 - z^3"],
}

# Codimension-two toric ideal whose trace contains m^4 but not m
SAMPLE_TORIC_CODIM_TWO = {
    "type": "ideal",
    "variables": ["x1", "x2", "x3", "x4", "x5", "x6"],
    "generators": [
        "x1*x5^2 - x2*x4^2",
        "x1*x6^2 - x3*x4^2",
        "x2*x6^2 - x3*x5^2",
    ],
}

SAMPLE_HYPERSURFACE = {
    "type": "ideal",
    "variables": ["x", "y", "z"],
    "generators": ["x*z - y^2"],
}

# Cone spanned by (1, 0) and (1, 3) with the normal point (1, 2) removed
SAMPLE_CURVE_WITH_GAP = [0, 1, 3]

SAMPLE_TWISTED_CUBIC = [0, 1, 2, 3]

SAMPLE_CURVE_NOT_NG = [0, 1, 3, 4, 9, 14]

SAMPLE_RP2 = {
    "type": "complex",
    "vertices": 6,
    "facets": [
        [1, 2, 5], [1, 2, 6], [1, 3, 4], [1, 3, 6], [1, 4, 5],
        [2, 3, 4], [2, 3, 5], [2, 4, 6], [3, 5, 6], [4, 5, 6],
    ],
}

SAMPLE_STAR = {
    "type": "complex",
    "vertices": 4,
    "facets": [[1, 2], [1, 3], [1, 4]],
}


@pytest.fixture
def config():
    """Default engine configuration."""
    return EngineConfig()


@pytest.fixture
def small_config():
    """Tight caps for resource-error tests."""
    return EngineConfig(max_pairs=5, max_degree=4)
