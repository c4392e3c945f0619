"""Standard subtractive Karatsuba with an explicit scratch arena.

Each recursive call at length ``n`` takes ``2*(n//2)`` limbs of scratch for the
middle product ``|X_hi - X_lo| * |Y_hi - Y_lo|`` and hands the rest of the
arena to its children, so one arena of ``ks_scratch_size(n)`` (< 2n) limbs
serves a whole multiplication.  Odd lengths peel the last limb of each
operand inside the same call.

Unequal lengths use the ``n = q*m + r`` block decomposition; every block
after the first is an additive call that adds the product into the limbs
already present in the output.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from .instrument import KS_CALLS, KS_PEAK, KS_SCRATCH, new_counters
from .limb_core import (
    check_radix, mpi_add, mpi_add_c, mpi_addmul_scalar, mpi_cmp, mpi_neg,
    mpi_sub, natural,
)
from .schoolbook import kr_mul_b1, sb_mul

DEFAULT_THRESHOLD = 128


@njit(cache=True)
def ks_scratch_size(n, threshold):
    """Arena limbs needed by an n x n multiply (0 below the threshold)."""
    total = 0
    while n >= threshold and n >= 2:
        total += 2 * (n // 2)
        n //= 2
    return total


@njit(cache=True)
def _absdiff(rho, dst, u, v):
    """dst = |u - v|; returns the sign of u - v as +1 or -1."""
    if mpi_cmp(u, v) >= 0:
        for i in range(dst.shape[0]):
            dst[i] = u[i]
        mpi_sub(rho, dst, v)
        return 1
    for i in range(dst.shape[0]):
        dst[i] = v[i]
    mpi_sub(rho, dst, u)
    return -1


@njit
def _ks_core(rho, d, x, y, arena, off, threshold, st, additive):
    """d = x*y, or d = x*y + C*rho^n with C preloaded when ``additive``."""
    n = x.shape[0]
    st[KS_CALLS] += 1
    if n < threshold or n < 2:
        if additive:
            return kr_mul_b1(rho, d, x, y)
        sb_mul(rho, d, x, y)
        return 0

    odd = n & 1
    m = n - odd
    k = m // 2
    use = 2 * k
    w = arena[off:off + use]
    nxt = off + use
    st[KS_SCRATCH] += use
    if nxt > st[KS_PEAK]:
        st[KS_PEAK] = nxt

    dd = d[:2 * m]
    x_hi = x[:k]
    x_lo = x[k:m]
    y_hi = y[:k]
    y_lo = y[k:m]
    c_last = 0
    if odd and additive:
        c_last = d[m]

    out = 0
    if additive:
        sx = _absdiff(rho, dd[2 * k:3 * k], x_hi, x_lo)
        sy = _absdiff(rho, dd[3 * k:], y_hi, y_lo)
        _ks_core(rho, w, dd[2 * k:3 * k], dd[3 * k:], arena, nxt, threshold,
                 st, False)
        _ks_core(rho, dd[2 * k:], x_lo, y_lo, arena, nxt, threshold, st, False)
        kap = 0
        if sx == sy:
            kap = -mpi_neg(rho, w)
        kap += mpi_add(rho, w, dd[2 * k:])
        kap += mpi_add(rho, dd[k:3 * k], w)
        out = mpi_add_c(rho, dd[:k], kap)
        _ks_core(rho, w, x_hi, y_hi, arena, nxt, threshold, st, False)
        out += mpi_add(rho, dd[:2 * k], w)
        c = mpi_add(rho, dd[k:3 * k], w)
        out += mpi_add_c(rho, dd[:k], c)
    else:
        sx = _absdiff(rho, dd[:k], x_hi, x_lo)
        sy = _absdiff(rho, dd[k:2 * k], y_hi, y_lo)
        _ks_core(rho, w, dd[:k], dd[k:2 * k], arena, nxt, threshold, st, False)
        _ks_core(rho, dd[:2 * k], x_hi, y_hi, arena, nxt, threshold, st, False)
        _ks_core(rho, dd[2 * k:], x_lo, y_lo, arena, nxt, threshold, st, False)
        kap = 0
        if sx == sy:
            kap = -mpi_neg(rho, w)
        kap += mpi_add(rho, w, dd[:2 * k])
        kap += mpi_add(rho, w, dd[2 * k:])
        kap += mpi_add(rho, dd[k:3 * k], w)
        mpi_add_c(rho, dd[:k], kap)

    if odd:
        # x = xbar*rho + a, y = ybar*rho + b:
        # x*y = xbar*ybar*rho^2 + xbar*b*rho + a*y
        d[2 * m] = 0
        d[2 * m + 1] = 0
        out += mpi_addmul_scalar(rho, d[:2 * m + 1], x[:m], y[n - 1])
        out += mpi_addmul_scalar(rho, d, y, x[n - 1])
        if c_last != 0:
            out += mpi_add_c(rho, d[:m + 1], c_last)
    return out


@njit
def _ks_mpi_mul(rho, d, a, b, arena, threshold, st):
    n = a.shape[0]
    m = b.shape[0]
    if m < threshold:
        sb_mul(rho, d, a, b)
        return
    q = n // m
    r = n - q * m
    if r != 0:
        _ks_mpi_mul(rho, d[:m + r], b, a[:r], arena, threshold, st)
    for i in range(q):
        off = r + i * m
        first = off == 0
        c = _ks_core(rho, d[off:off + 2 * m], a[off:off + m], b, arena, 0,
                     threshold, st, not first)
        if c != 0:
            if mpi_add_c(rho, d[:off], c) != 0:
                raise RuntimeError("product overflowed its buffer")


@njit
def _ks_mul(rho, d, a, b, arena, threshold, st):
    if a.shape[0] < b.shape[0]:
        a, b = b, a
    if b.shape[0] == 0:
        d[:] = 0
        return
    _ks_mpi_mul(rho, d, a, b, arena, threshold, st)


@njit
def _ks_mul_alloc(rho, d, a, b, threshold, st):
    """As ``_ks_mul`` with the arena allocated here, on the heap."""
    m = min(a.shape[0], b.shape[0])
    arena = np.empty(ks_scratch_size(m, threshold), dtype=np.uint16)
    _ks_mul(rho, d, a, b, arena, threshold, st)


@dataclass
class ScratchArena:
    buffer: np.ndarray
    high_water: int = 0

    @classmethod
    def for_length(cls, n, threshold=DEFAULT_THRESHOLD):
        return cls(np.empty(ks_scratch_size(n, threshold), dtype=np.uint16))

    @property
    def capacity(self):
        return self.buffer.shape[0]


def ks_mul(rho, a, b, d=None, arena=None, threshold=DEFAULT_THRESHOLD,
           stats=None):
    """Product of two naturals by standard Karatsuba; returns the output buffer."""
    rho = check_radix(rho)
    a, b = natural(a, rho), natural(b, rho)
    size = a.shape[0] + b.shape[0]
    if d is None:
        d = np.zeros(size, dtype=np.uint16)
    if d.shape[0] != size:
        raise ValueError(f"output buffer needs {size} limbs, got {d.shape[0]}")
    st = stats.counters if stats is not None else new_counters()
    if arena is None:
        _ks_mul_alloc(rho, d, a, b, threshold, st)
        return d
    need = ks_scratch_size(min(a.shape[0], b.shape[0]), threshold)
    if arena.capacity < need:
        raise ValueError(f"arena holds {arena.capacity} limbs, {need} needed")
    peak = st[KS_PEAK]
    st[KS_PEAK] = 0
    _ks_mul(rho, d, a, b, arena.buffer, threshold, st)
    arena.high_water = max(arena.high_water, int(st[KS_PEAK]))
    st[KS_PEAK] = max(peak, st[KS_PEAK])
    return d
