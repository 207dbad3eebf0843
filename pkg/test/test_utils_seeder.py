"""test unit for utils/seeder.py"""

import runtime_path  # isort:skip

import numpy as np
import pytest

from core.initializer import SphereCoordInit
from utils.seeder import random_seed


def test_random_seed():
    with pytest.raises(ValueError):
        random_seed(2**32 + 1)
    with pytest.raises(ValueError):
        random_seed(-1)


def test_same_seed_same_draws():
    assert random_seed(7) == 7
    first = SphereCoordInit()((20,))
    random_seed(7)
    second = SphereCoordInit()((20,))
    assert np.array_equal(first[0], second[0])
    assert np.array_equal(first[1], second[1])
