"""Quadratic multiplication and the in-place schoolbook base cases.

``kr_mul_b1`` and ``kr_mul_b2`` solve the same additive problems as the
Karatsuba kernels (``A*B + C*rho**n`` and ``(A0 - A1)*B + C*rho**n``), with
``C`` preloaded in the first ``n`` limbs of the ``2n``-limb output.  Both work
inside the output buffer with O(1) extra state.
"""

import numpy as np
from numba import njit

from .limb_core import mpi_add_c, mpi_addmul_scalar


@njit(cache=True)
def sb_mul(rho, d, a, b):
    """d = a * b with len(d) == len(a) + len(b); d must not overlap a or b."""
    n = a.shape[0]
    m = b.shape[0]
    d[:] = 0
    for j in range(m - 1, -1, -1):
        # d[j] is still zero here and the row carry is < rho
        d[j] = mpi_addmul_scalar(rho, d[j + 1:j + 1 + n], a, b[j])


@njit(cache=True)
def kr_mul_b1(rho, d, a, b):
    n = a.shape[0]
    d[n:] = 0
    out = 0
    for j in range(n - 1, -1, -1):
        c = mpi_addmul_scalar(rho, d[j + 1:j + 1 + n], a, b[j])
        if c != 0:
            out += mpi_add_c(rho, d[:j + 1], c)
    return out


@njit(cache=True)
def kr_mul_b2(rho, d, a0, a1, b):
    n = a0.shape[0]
    d[n:] = 0
    out = 0
    for j in range(n - 1, -1, -1):
        s = np.int64(b[j])
        if s == 0:
            continue
        row = d[j + 1:j + 1 + n]
        c = np.int64(0)
        for i in range(n - 1, -1, -1):
            t = np.int64(row[i]) + s * (np.int64(a0[i]) - np.int64(a1[i])) + c
            c = t // rho
            row[i] = t - c * rho
        if c != 0:
            out += mpi_add_c(rho, d[:j + 1], c)
    return out
