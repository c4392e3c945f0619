"""One calling convention for the three multipliers.

Every kernel in :data:`KERNELS` is compiled and takes
``(rho, d, a, b, threshold, counters)`` with ``d`` of length
``len(a) + len(b)``; :func:`multiply` is the Python-facing wrapper.
"""

import numpy as np
from numba import njit

from .instrument import MulStats, new_counters
from .karatsuba_roche import DEFAULT_THRESHOLD, _mpi_mul_kr
from .karatsuba_std import _ks_mul_alloc
from .limb_core import check_radix, natural
from .schoolbook import sb_mul

ALGOS = ("SB", "KS", "KR")


@njit
def sb_kernel(rho, d, a, b, threshold, st):
    sb_mul(rho, d, a, b)


@njit
def ks_kernel(rho, d, a, b, threshold, st):
    _ks_mul_alloc(rho, d, a, b, threshold, st)


@njit
def kr_kernel(rho, d, a, b, threshold, st):
    _mpi_mul_kr(rho, d, a, b, threshold, st, st[:0])


KERNELS = {"SB": sb_kernel, "KS": ks_kernel, "KR": kr_kernel}


def multiply(rho, a, b, algo="KR", threshold=DEFAULT_THRESHOLD, stats=None):
    """Return the (len(a) + len(b))-limb product of two naturals."""
    rho = check_radix(rho)
    try:
        kernel = KERNELS[algo.upper()]
    except KeyError:
        raise ValueError(f"unknown algorithm {algo!r}; pick one of {ALGOS}") from None
    a, b = natural(a, rho), natural(b, rho)
    d = np.zeros(a.shape[0] + b.shape[0], dtype=np.uint16)
    st = stats.counters if isinstance(stats, MulStats) else new_counters()
    kernel(rho, d, a, b, threshold, st)
    return d
