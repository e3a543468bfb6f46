import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_invertible(rng, d, cond_max=50.0):
    while True:
        T = rng.standard_normal((d, d))
        if np.linalg.cond(T) < cond_max:
            return T
