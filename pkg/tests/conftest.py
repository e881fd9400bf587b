import numpy as np
import pytest

from gcor import make_sample


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def comonotone_sample(rng):
    # tie-free, even n, strictly increasing link
    xs = rng.normal(size=400)
    return make_sample(xs, np.exp(0.7 * xs) + 1.0)


@pytest.fixture
def countermonotone_sample(rng):
    xs = rng.normal(size=400)
    return make_sample(xs, -(xs**3) - 0.5 * xs)


@pytest.fixture
def noisy_sample(rng):
    xs = rng.normal(size=500)
    ys = 0.6 * xs + 0.8 * rng.normal(size=500)
    return make_sample(xs, ys)
