import time

import numpy as np
import pytest

from fspair.measures import make_poisson
from fspair.nevanlinna import build_model

SESSION_START = time.monotonic()


@pytest.fixture(scope="session")
def poisson_pair():
    return make_poisson()


@pytest.fixture(scope="session")
def poisson_model(poisson_pair):
    return build_model(poisson_pair)


@pytest.fixture(scope="session")
def big_poisson_model():
    """Poisson pair with a large measure truncation; the integral-side tail
    scales like 1/t_max, so 4e6 supports ~1e-6 agreement tests."""
    pair = make_poisson(t_max=4_000_000, lambda_max=64)
    rng = np.random.default_rng(7)
    sample = [complex(x, y) for x, y in zip(rng.uniform(-1.8, 1.8, 8),
                                            rng.uniform(0.4, 3.5, 8))]
    return build_model(pair, k=0, sample=sample)
