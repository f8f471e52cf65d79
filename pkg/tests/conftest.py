# Shared fixtures: seeded generators and small chains.
import sys
from pathlib import Path

import numpy as np
import pytest

# top-level packages live next to tests/
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from qudit_state import ChainConfig  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long Monte Carlo runs (deselect with -m 'not slow')")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def chain_6_2():
    return ChainConfig(N=6, d=2)


@pytest.fixture
def chain_10_2():
    return ChainConfig(N=10, d=2, seed=7)


@pytest.fixture
def chain_4_3():
    return ChainConfig(N=4, d=3)
