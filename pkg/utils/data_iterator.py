"""Grid iterator used to shard parameter scans."""

import os
from collections import namedtuple

import numpy as np

from core.errors import ConfigError

THREADS_ENV = "PILLOWCASE_THREADS"

GridBlock = namedtuple("GridBlock", ["index", "start", "stop", "u", "v"])


def worker_count(override=None):
    """Thread count from `override`, else PILLOWCASE_THREADS, else the
    number of CPUs."""
    value = override
    if value is None:
        value = os.environ.get(THREADS_ENV)
    if value is None:
        return os.cpu_count() or 1
    try:
        count = int(value)
    except (TypeError, ValueError):
        raise ConfigError("%s must be a positive integer, got %r" % (
            THREADS_ENV, value))
    if count < 1:
        raise ConfigError("%s must be a positive integer, got %r" % (
            THREADS_ENV, value))
    return count


class BaseIterator(object):

    def __call__(self, u_axis, v_axis):
        raise NotImplementedError


class GridIterator(BaseIterator):
    """Cut the product grid u_axis x v_axis into blocks of whole rows.

    Blocks come out in row order, so results merged in iteration order
    do not depend on how many workers consumed them.
    """

    def __init__(self, block_rows=16):
        if block_rows < 1:
            raise ValueError("block_rows must be >= 1")
        self.block_rows = block_rows

    def __call__(self, u_axis, v_axis):
        u_axis = np.asarray(u_axis, dtype=float)
        v_axis = np.asarray(v_axis, dtype=float)
        starts = np.arange(0, len(u_axis), self.block_rows)
        for index, start in enumerate(starts):
            stop = min(start + self.block_rows, len(u_axis))
            u, v = np.meshgrid(u_axis[start:stop], v_axis, indexing="ij")
            yield GridBlock(index=index, start=int(start), stop=int(stop),
                            u=u, v=v)
