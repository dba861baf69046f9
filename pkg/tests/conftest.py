import numpy as np
import pytest

from crossrep.linalg import Tolerance


@pytest.fixture
def tol():
    return Tolerance()


@pytest.fixture
def rng():
    return np.random.default_rng(20240801)
