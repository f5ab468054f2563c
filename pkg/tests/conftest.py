"""Test fixtures."""
import os
from datetime import timedelta

import numpy as np
import pytest
from hypothesis import HealthCheck, Verbosity, settings

from src.codec import HermitianCode
from src.curve.hermitian import get_curve


# register test flags for hypothesis; allows e.g. extended deadlines on CI
settings.register_profile(
    "ci",
    max_examples=100,
    deadline=timedelta(milliseconds=5000),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile(
    "dev", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile(
    "debug",
    max_examples=10,
    deadline=None,
    verbosity=Verbosity.verbose,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run statistical campaigns"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


@pytest.fixture(scope="session")
def curve2():
    return get_curve(2)


@pytest.fixture(scope="session")
def curve3():
    return get_curve(3)


@pytest.fixture(scope="session")
def curve4():
    return get_curve(4)


@pytest.fixture(scope="session")
def code2():
    """[8, 4, >=4] code, q=2, m=4."""
    return HermitianCode(2, 4)


@pytest.fixture(scope="session")
def code3():
    """[27, 7, >=18] code, q=3, m=9."""
    return HermitianCode(3, 9)


@pytest.fixture(scope="session")
def code4():
    """[64, 10, >=49] code, q=4, m=15."""
    return HermitianCode(4, 15)


@pytest.fixture
def report_dir(tmp_path):
    return tmp_path / "reports"
