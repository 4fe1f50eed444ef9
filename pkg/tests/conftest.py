import numpy as np
import pytest

from kernelhom.kernels import from_blocks


@pytest.fixture
def kb():
    """Two diagonal blocks: the disjoint union of two half-size cliques."""
    return from_blocks([[1.0, 0.0], [0.0, 1.0]], [0.5, 0.5])


@pytest.fixture
def kd():
    return from_blocks([[1.0, -1.0], [-1.0, 1.0]], [0.5, 0.5])


@pytest.fixture
def kc():
    return from_blocks([[0.0, 1.0], [1.0, 0.0]], [0.5, 0.5])


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)
