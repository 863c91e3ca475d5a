import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


def random_params(rng, size=None):
    """Random positive parameter vectors spanning the practically relevant
    ranges (theta and k over two decades, beta and alpha around unity)."""
    def one():
        return (float(rng.uniform(0.05, 20.0)), float(rng.uniform(0.05, 20.0)),
                float(rng.uniform(0.3, 5.0)), float(rng.uniform(0.1, 5.0)))
    if size is None:
        return one()
    return [one() for _ in range(size)]
