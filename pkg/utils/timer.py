"""Named timers that report through logging."""

import logging
import time

import numpy as np

LOGGER = logging.getLogger(__name__)


class Timer(object):

    def __init__(self, task_name="UntitledTask"):
        self.task_name = task_name
        self._duration_list = []
        self.check_point = None
        self.is_timing = False

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, *exc):
        self.stop()
        return False

    def start(self):
        if not self.is_timing:
            self.check_point = time.perf_counter()
            self.is_timing = True

    def pause(self):
        if self.is_timing:
            self._duration_list.append(time.perf_counter() - self.check_point)
            self.is_timing = False

    def stop(self):
        self.pause()
        self.report()

    def report(self):
        mean = np.mean(self._duration_list) if self._duration_list else 0.0
        LOGGER.info("[Timer] %s total: %.4f mean: %.4f count: %d",
                    self.task_name, self.duration, mean, self.count)

    @property
    def duration(self):
        return float(np.sum(self._duration_list))

    @property
    def count(self):
        return len(self._duration_list)
