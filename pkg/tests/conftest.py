import numpy as np
import pytest

from rpdepth import (FunctionalSample, Grid, build_pool, filter_pool,
                     tune_beta)


@pytest.fixture(scope="session")
def gauss_sample():
    """Smooth correlated Gaussian sample reused by the fixed-pool suites."""
    rng = np.random.default_rng(2024)
    d, n = 30, 80
    t = np.linspace(0, 1, d)
    # squared-exponential covariance over the grid; jitter keeps it PD
    C = np.exp(-((t[:, None] - t[None, :]) / 0.2) ** 2) + 1e-10 * np.eye(d)
    L = np.linalg.cholesky(C)
    X = rng.standard_normal((n, d)) @ L.T
    return FunctionalSample(Grid(t), X)


@pytest.fixture(scope="session")
def fixed_pool(gauss_sample):
    pool = build_pool(gauss_sample, 800, seed=99)
    return filter_pool(pool, tune_beta(pool, 0.05))
