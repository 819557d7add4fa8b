"""Shared fixtures: small exactly-representable functions with known behavior."""

import numpy as np
import pytest

from lulu.plf import PLFunction


@pytest.fixture
def box_pulse() -> PLFunction:
    # height 1 on [4, 4.4], 0 elsewhere on [0, 10]
    return PLFunction(np.array([0.0, 4.0, 4.4, 10.0]),
                      np.array([0.0, 1.0, 1.0, 0.0]),
                      np.array([0.0, 1.0, 0.0]),
                      np.array([0.0, 1.0, 0.0]))


@pytest.fixture
def vee() -> PLFunction:
    # |x - 5| on [0, 10]
    return PLFunction.from_points([0, 5, 10], [5, 0, 5])


@pytest.fixture
def identity_fn() -> PLFunction:
    return PLFunction.from_points([0, 10], [0, 10])


@pytest.fixture
def step_jump() -> PLFunction:
    # 10 on [0, 5), attained value 5 at the jump point, 0 on (5, 10]
    return PLFunction(np.array([0.0, 5.0, 10.0]),
                      np.array([10.0, 5.0, 0.0]),
                      np.array([10.0, 0.0]),
                      np.array([10.0, 0.0]))


@pytest.fixture
def tent() -> PLFunction:
    # rises to 5 at x=5, falls to 0 at x=7.5, flat after
    return PLFunction.from_points([0, 5, 7.5, 10], [0, 5, 0, 0])
