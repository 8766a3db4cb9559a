import numpy as np
import pytest

from convolab import make_grid


@pytest.fixture(scope="session")
def std_grid():
    return make_grid(8.0, 256)


@pytest.fixture(scope="session")
def fine_grid():
    return make_grid(16.0, 1024)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)


def dft_matrix(grid, direction):
    """Independent dense realization of the transform pair (oracle)."""
    phase = np.outer(grid.t, grid.xi)
    if direction == "forward":
        return grid.dx * np.exp(1j * phase).T
    return (grid.dxi / (2 * np.pi)) * np.exp(-1j * phase)
