import numpy as np
import pytest

from spinwav.wavelets.family import WaveletParams, build_family


@pytest.fixture
def rng():
    """Seeded generator so every test run draws the same coefficients."""
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def family_factory():
    cache = {}

    def make(L, alpha=2.0, J0=0, N=3, s=0):
        key = (L, alpha, J0, N, s)
        if key not in cache:
            cache[key] = build_family(WaveletParams(L=L, alpha=alpha, J0=J0, N=N, s=s))
        return cache[key]

    return make
