import random

import numpy as np
import pytest

from gf2poly.context import get_context


@pytest.fixture(scope="session")
def ctx():
    return get_context()


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def nrng():
    return np.random.default_rng(20240611)
