import numpy as np
import pytest

from ewens_pitman import (
    convolution_log_matrix,
    pmf_markov,
    pmf_table,
    validate_params,
)

# (alpha, theta) pairs used throughout the comparison tests
STD_GRID = [(a, t) for a in (0.3, 0.5, 0.7) for t in (0.5, 1.0, 2.0)]


@pytest.fixture(scope="session")
def std_grid():
    return STD_GRID


@pytest.fixture(scope="session")
def dp_table():
    """Memoised exact pmf tables; the big ones are reused across modules."""
    cache = {}

    def get(alpha: float, theta: float, n: int):
        key = (alpha, theta, n)
        if key not in cache:
            cache[key] = pmf_markov(validate_params(alpha, theta), n)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def conv_matrix():
    """Memoised convolution matrices per alpha, built at n_max = 300."""
    cache = {}

    def get(alpha: float, n_max: int = 300):
        key = (alpha, n_max)
        if key not in cache:
            pmf = pmf_table(validate_params(alpha, 1.0), n_max)
            cache[key] = convolution_log_matrix(pmf, n_max, n_max)
        return cache[key]

    return get
