import time
from collections import deque
from typing import Optional

from comparative_alloc.utils.attr_dict import AttrDict
from comparative_alloc.utils.misc import EPS


class AvgTime:
    def __init__(self, num_values_to_avg):
        self.values = deque([], maxlen=num_values_to_avg)

    def mean(self) -> float:
        return sum(self.values) / max(1, len(self.values))

    def __str__(self):
        return f"{self.mean():.4f}"


class TimingContext:
    def __init__(self, timing, key: str, additive=False, average: Optional[int] = None):
        self._timing = timing
        self._key = key
        self._additive = additive
        self._average = average
        self._time_enter = None

    def initial_value(self):
        if self._average is not None:
            return AvgTime(num_values_to_avg=self._average)
        return 0.0

    def __enter__(self):
        self._time_enter = time.perf_counter()

    def __exit__(self, type_, value, traceback):
        time_passed = max(time.perf_counter() - self._time_enter, EPS)
        if self._additive:
            self._timing[self._key] += time_passed
        elif self._average is not None:
            self._timing[self._key].values.append(time_passed)
        else:
            self._timing[self._key] = time_passed


class Timing(AttrDict):
    """
    Named wall-clock timers, e.g.:

        timing = Timing()
        with timing.timeit("rank"):
            ...
        log.debug(timing)
    """

    def __init__(self, name="Profile", *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._name = name

    def _init_context(self, key, *args, **kwargs):
        ctx = TimingContext(self, key, *args, **kwargs)
        if key not in self:
            self[key] = ctx.initial_value()
        return ctx

    def timeit(self, key):
        return self._init_context(key)

    def add_time(self, key):
        return self._init_context(key, additive=True)

    def time_avg(self, key, average=10):
        return self._init_context(key, average=average)

    @staticmethod
    def _time_str(value):
        return f"{value:.4f}" if isinstance(value, float) else str(value)

    def flat_str(self):
        s = []
        for key, value in self.items():
            if key != "_name":
                s.append(f"{key}: {self._time_str(value)}")
        return ", ".join(s)

    def __str__(self):
        return f"{self._name}: {self.flat_str()}"
