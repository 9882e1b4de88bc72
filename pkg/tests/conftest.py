"""Shared fixtures for the test suite."""

import numpy as np
import pytest

from jumpmc.models.spin import SpinSystem
from jumpmc.models.tabular import TabularTarget, three_state_path


@pytest.fixture
def path3():
    """Three-state birth-death chain with weights (0.2, 0.5, 0.3)."""
    return three_state_path()


@pytest.fixture
def two_state():
    """Two-state chain with weights (1/3, 2/3).

    With Barker balancing the rate matrix is [[-2/3, 2/3], [1/3, -1/3]]
    and the mean holding time at state 0 is exactly 1.5.
    """
    return TabularTarget(np.log([1.0, 2.0]), name="two_state")


@pytest.fixture
def spin4():
    """Four-spin system with random couplings, zero field."""
    return SpinSystem.random_instance(4, interaction_scale=1.0, field=0.0, seed=3)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
