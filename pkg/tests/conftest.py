import numpy as np
import pytest

from spar import random_schmidt_symmetric, random_separable


@pytest.fixture(scope="session")
def separable_22():
    """500 seeded random separable two-qubit states."""
    return [random_separable(2, 2, terms=1 + i % 10, seed=10_000 + i) for i in range(500)]


@pytest.fixture(scope="session")
def separable_33():
    """500 seeded random separable two-qutrit states."""
    return [random_separable(3, 3, terms=1 + i % 10, seed=20_000 + i) for i in range(500)]


@pytest.fixture(scope="session")
def schmidt_symmetric_states():
    """200 seeded random Schmidt-symmetric states, half 2x2 and half 3x3."""
    states = [random_schmidt_symmetric(2, 1 + i % 5, seed=30_000 + i) for i in range(100)]
    states += [random_schmidt_symmetric(3, 1 + i % 5, seed=40_000 + i) for i in range(100)]
    return states


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20250809)
