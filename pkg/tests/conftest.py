import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def momenta(rng):
    """A small bank of on-shell four-momenta (m = 1) up to |p| = 10."""
    from diracspin.lorentz import random_momentum

    return np.array([random_momentum(rng, 1.0) for _ in range(40)])
