"""Numpy random seeder"""

import logging

import numpy as np

LOGGER = logging.getLogger(__name__)

MAX_SEED = 2 ** 32 - 1


def random_seed(seed):
    """Seed the global numpy state; scipy.stats samplers draw from it."""
    seed = int(seed)
    if seed < 0 or seed > MAX_SEED:
        raise ValueError("Seed must be between 0 and 2**32 - 1")
    np.random.seed(seed)
    LOGGER.debug("numpy random state seeded with %d", seed)
    return seed
