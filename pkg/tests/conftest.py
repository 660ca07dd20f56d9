"""Shared builders for the test suite."""

import math

import numpy as np
import pytest

from paulidyn import (
    ExpProfile,
    Grid,
    Mixture,
    TruncCosProfile,
)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def example4(omega: float = 1.0, t_max: float | None = None, n: int = 1500):
    """Two-axis mixture of truncated-cosine dampings: x=(1/2,1/2,0).

    Eigenvalues are l1 = l2 = (1 + cos wt)/2 then 1/2, l3 = cos wt then 0;
    the map stops being invertible at pi/2w.
    """
    if t_max is None:
        t_max = 1.5 * math.pi / omega
    grid = Grid(t_max=t_max, n=n)
    mix = Mixture((0.5, 0.5, 0.0), TruncCosProfile(omega=omega))
    return mix, mix.to_trajectory(grid), grid


def enm(rate: float = 1.0, t_max: float = 10.0, n: int = 2000):
    """Mixture x=(1/2,1/2,0) of exponential dampings: the dephasing rate on
    the third axis is -tanh(rate*t/2)/2 * rate, negative for every t > 0."""
    grid = Grid(t_max=t_max, n=n)
    mix = Mixture((0.5, 0.5, 0.0), ExpProfile(rate=rate))
    return mix, mix.to_trajectory(grid), grid
