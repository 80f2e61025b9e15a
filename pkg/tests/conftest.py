"""
Shared fixtures for the solver test suite.
"""

import math

import numpy as np
import pytest

from etdms.spectral import Field, make_grid


@pytest.fixture
def grid_2pi():
    """32x32 grid on [0, 2 pi]^2 (integer wavenumbers)."""
    return make_grid(32, 2.0 * math.pi)


@pytest.fixture
def cos2x_cos2y(grid_2pi):
    """Single-mode field cos(2x) cos(2y)."""
    return Field.from_values(grid_2pi, np.cos(2.0 * grid_2pi.X) * np.cos(2.0 * grid_2pi.Y), mean_zero=True)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
