import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import wigsim as ws

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def grid_default():
    return ws.default_grid()


@pytest.fixture(scope="session")
def grid_small():
    # coarse single-mode grid for tests that only need qualitative accuracy
    return ws.build_grid(-8, 8, 161, -8, 8, 161)


@pytest.fixture(scope="session")
def grid_tiny():
    # two-mode work scales as n^4 in memory; 61 points keeps a joint field
    # near 100 MB where 161 points would need gigabytes
    return ws.build_grid(-8, 8, 61, -8, 8, 61)


@pytest.fixture(scope="session")
def one_photon(grid_default):
    return ws.number_state_wigner(1, grid_default)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
