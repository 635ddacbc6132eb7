import numpy as np
import pytest

from phaseweyl.config import DEFAULT, GridConfig
from phaseweyl.grids import WindowState, gaussian_ground_state, standard_axes


@pytest.fixture(scope="session")
def tol():
    return DEFAULT.tol


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(11235)


@pytest.fixture(scope="session")
def axes_pair():
    return standard_axes(DEFAULT.grid)


@pytest.fixture(scope="session")
def coarse_axes_pair():
    return standard_axes(GridConfig(points_x=128, halfwidth_x=8.0, points_z=256))


@pytest.fixture(scope="session")
def window(axes_pair):
    return WindowState(gaussian_ground_state(axes_pair[0]))


def rel_l2(a, b):
    num = np.sqrt(np.sum(np.abs(a.values - b.values) ** 2))
    den = np.sqrt(np.sum(np.abs(b.values) ** 2))
    return float(num / den)
