import numpy as np
import pytest

from helpers import cualni_matrix


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def cualni_U():
    return cualni_matrix()
