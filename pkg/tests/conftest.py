import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def complex_vector(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)
