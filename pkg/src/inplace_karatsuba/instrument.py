"""Counters shared by the compiled kernels, plus heap-allocation accounting.

Kernels take a flat ``int64`` counter array (``MulStats.counters``) and bump
fixed slots in it; :class:`MulStats` gives those slots names.  Heap
allocations made by compiled code go through numba's runtime allocator, whose
event counters :class:`AllocationCounter` reads.  Passing an array from
Python into compiled code also registers one event per array; use
:func:`kernel_allocations` to net that out.
"""

from dataclasses import dataclass, field

import numpy as np
from numba import njit
from numba.core.runtime import _nrt_python, rtsys

# counter slots
DEPTH = 0
MAX_DEPTH = 1
CASE1_POS = 2
CASE1_NEG = 3
CASE2 = 4
CASE3 = 5          # E carry -2
CASE3_EXACT = 6    # E == -rho**k (carry -1, zero limbs)
KR_CALLS = 7
KS_CALLS = 8
KS_SCRATCH = 9     # sum of per-call scratch consumption
KS_PEAK = 10       # scratch high-water mark
TRACE_POS = 11
TRACE_OVERFLOW = 12
KAPPA_MAX = 13
TRACE_WIDTH = 14   # int64 slots per trace row
N_COUNTERS = 16

CASE_LABELS = {
    CASE1_POS: "C1+",
    CASE1_NEG: "C1-",
    CASE2: "C2",
    CASE3: "C3",
    CASE3_EXACT: "E=-rho^k",
}


@dataclass
class MulStats:
    counters: np.ndarray = field(
        default_factory=lambda: np.zeros(N_COUNTERS, dtype=np.int64))

    def reset(self):
        self.counters[:] = 0

    def merge(self, other):
        peaks = (MAX_DEPTH, KS_PEAK, KAPPA_MAX)
        for i in range(N_COUNTERS):
            if i in peaks:
                self.counters[i] = max(self.counters[i], other.counters[i])
            else:
                self.counters[i] += other.counters[i]

    @property
    def case_counts(self):
        return {label: int(self.counters[i]) for i, label in CASE_LABELS.items()}

    @property
    def max_depth(self):
        return int(self.counters[MAX_DEPTH])

    @property
    def kr_calls(self):
        return int(self.counters[KR_CALLS])

    @property
    def ks_calls(self):
        return int(self.counters[KS_CALLS])

    @property
    def ks_scratch_total(self):
        return int(self.counters[KS_SCRATCH])

    @property
    def ks_peak(self):
        return int(self.counters[KS_PEAK])

    @property
    def kappa_max(self):
        return int(self.counters[KAPPA_MAX])


def new_counters():
    return np.zeros(N_COUNTERS, dtype=np.int64)


class AllocationCounter:
    """Count heap allocations performed by compiled code inside a ``with`` block.

    >>> with AllocationCounter() as ac:
    ...     kernel(...)
    >>> ac.allocs
    """

    def __init__(self):
        self.allocs = 0
        self.frees = 0

    def __enter__(self):
        if not _nrt_python.memsys_stats_enabled():
            _nrt_python.memsys_enable_stats()
        s = rtsys.get_allocation_stats()
        self._start = (s.alloc, s.free)
        return self

    def __exit__(self, *exc):
        s = rtsys.get_allocation_stats()
        self.allocs = s.alloc - self._start[0]
        self.frees = s.free - self._start[1]
        return False


@njit
def _probe(*args):
    return 0


def kernel_allocations(kernel, *args):
    """Run ``kernel(*args)`` and return the heap allocations it made itself.

    The events caused by handing the arguments to compiled code are measured
    with a no-op probe taking the same arguments and subtracted.
    """
    _probe(*args)
    with AllocationCounter() as base:
        _probe(*args)
    with AllocationCounter() as ac:
        kernel(*args)
    return ac.allocs - base.allocs
