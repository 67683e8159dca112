import numpy as np
import pytest

from diracpulse import DiracParams, make_gaussian_packet, make_grid


@pytest.fixture
def params():
    return DiracParams(mass=1.0, charge=1.0)


@pytest.fixture
def grid():
    return make_grid(1024, 64.0)


@pytest.fixture
def packet(grid, params):
    """Default packet: k0 = 1, sigma_x = 4, centred, positive branch."""
    return make_gaussian_packet(grid, 1.0, 4.0, 32.0, "+", params)


@pytest.fixture
def rng():
    return np.random.default_rng(20021012)
