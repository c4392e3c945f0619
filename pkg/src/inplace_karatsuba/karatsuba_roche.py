"""Space-efficient (in-place) Karatsuba multiplication with carries.

The workhorse is the *equal-length additive* problem: with ``C`` preloaded in
the first ``n`` limbs of a ``2n``-limb buffer ``D``, compute
``(A0 - A1) * B + C * rho**n`` in place and return the carry.  For even
``n = 2k`` the buffer is handled as four ``k``-limb quarters

    D00 | D01 | D10 | D11        (D00 most significant)

each paired with a small signed carry ``kappa``.  The three partial products
are computed by recursive calls directly into two adjacent quarters, so the
only extra state per frame is a handful of integers.

With the half-differences ``alpha = A0_hi - A1_hi`` and ``beta = A0_lo - A1_lo``:

    P0 = alpha * B_hi,   P1 = beta * B_lo,
    E  = alpha - beta,   P2 = (B_lo - B_hi) * E

``E`` is first written into D11.  It lies in ``[-2(rho^k - 1), 2(rho^k - 1)]``;
its carry decides which step sequence runs:

* case 1, ``|E| < rho^k``: multiply by ``|E|`` (swapping the B halves when
  ``E < 0``);
* case 2, ``E >= rho^k``: multiply by ``E - rho^k``, then add ``B_lo - B_hi``
  one quarter up;
* case 3, ``E <= -rho^k``: multiply by ``-E - rho^k``, then add ``B_hi - B_lo``.

Step numbering in traces follows the case-1 sequence 0..10; cases 2 and 3
insert the extra correction as step 4 and run 0..11.

Odd lengths peel one limb (``A = rho*Abar + a``, ``B = rho^(2k)*b + Bbar``)
so that the even result lands one limb to the right and the two remaining
scalar terms touch disjoint limb ranges.

``mpi_mul_kr`` / ``kr_mpi_mul`` reduce general ``n x m`` products to ``q``
square additive calls (``n = q*m + r``) with no heap allocation.
"""

from dataclasses import dataclass
from enum import IntEnum

import numpy as np
from numba import njit

from .instrument import (
    CASE1_NEG, CASE1_POS, CASE2, CASE3, CASE3_EXACT, DEPTH, KAPPA_MAX,
    KR_CALLS, MAX_DEPTH, TRACE_OVERFLOW, TRACE_POS, TRACE_WIDTH, MulStats, new_counters,
)
from .limb_core import (
    check_radix, is_zero, mpi_add, mpi_add_c, mpi_addmul_scalar, mpi_neg,
    mpi_sub, mpi_submul_scalar, natural, to_int,
)
from .schoolbook import kr_mul_b1, kr_mul_b2, sb_mul

DEFAULT_THRESHOLD = 128
FINAL_STEP = 100

# trace row layout
_T_KIND, _T_DEPTH, _T_TOP, _T_TABLE, _T_STEP, _T_K = 0, 1, 2, 3, 4, 5
_T_KAPPA = 6          # four slots
_T_N = 10
_T_HEADER = 16
_ENTER, _STEP = 0, 1


class ECase(IntEnum):
    CASE1_NONNEGATIVE = 0
    CASE1_NEGATIVE = 1
    CASE2 = 2
    CASE3 = 3


@dataclass
class QuarterCarries:
    kappa00: int = 0
    kappa01: int = 0
    kappa10: int = 0
    kappa11: int = 0


@dataclass(frozen=True)
class CallInfo:
    """Operands of one even-length additive call, as exact integers."""
    top: bool
    k: int
    a0: int
    a1: int
    b: int
    c: int


@dataclass(frozen=True)
class StepEvent:
    depth: int
    top: bool
    table: int        # 0 for the steps shared by all cases
    step: int         # FINAL_STEP after carry finalization
    k: int
    quarters: tuple   # limb values of D00, D01, D10, D11
    kappas: tuple     # kappa00, kappa01, kappa10, kappa11
    call: CallInfo
    rho_k: int

    def full(self, i):
        """kappa * rho**k + limb value of quarter ``i`` (0 = D00)."""
        return self.kappas[i] * self.rho_k + self.quarters[i]


# -- small helpers -----------------------------------------------------------


@njit(cache=True)
def _copy(dst, src):
    for i in range(dst.shape[0]):
        dst[i] = src[i]


@njit(cache=True)
def classify_e(kappa_e, e):
    """Case tag for E = kappa_e * rho**k + value(e)."""
    if kappa_e == 0:
        return 0
    if kappa_e == -1:
        return 3 if is_zero(e) else 1
    if kappa_e == 1:
        return 2
    if kappa_e == -2:
        return 3
    raise ValueError("carry of E outside [-2, 1]")


@njit(cache=True)
def _note_kappa(st, x):
    if x < 0:
        x = -x
    if x > st[KAPPA_MAX]:
        st[KAPPA_MAX] = x


@njit(cache=True)
def _trace_row(tr, st):
    """Claim the next trace row; returns its offset or -1 when not tracing."""
    if tr.shape[0] == 0:
        return -1
    w = st[TRACE_WIDTH]
    o = st[TRACE_POS] * w
    if o + w > tr.shape[0]:
        st[TRACE_OVERFLOW] = 1
        return -1
    st[TRACE_POS] += 1
    return o


@njit(cache=True)
def _trace_enter(tr, st, top, dd, x0, x1, y, m):
    o = _trace_row(tr, st)
    if o < 0:
        return
    tr[o + _T_KIND] = _ENTER
    tr[o + _T_DEPTH] = st[DEPTH]
    tr[o + _T_TOP] = top
    tr[o + _T_N] = m
    o += _T_HEADER
    for i in range(m):
        tr[o + i] = x0[i]
        tr[o + m + i] = x1[i] if not top else 0
        tr[o + 2 * m + i] = y[i]
    o += 3 * m
    for i in range(2 * m):
        tr[o + i] = dd[i]


@njit(cache=True)
def _trace_step(tr, st, top, table, step, dd, k, k00, k01, k10, k11):
    _note_kappa(st, k00)
    _note_kappa(st, k01)
    _note_kappa(st, k10)
    _note_kappa(st, k11)
    o = _trace_row(tr, st)
    if o < 0:
        return
    tr[o + _T_KIND] = _STEP
    tr[o + _T_DEPTH] = st[DEPTH]
    tr[o + _T_TOP] = top
    tr[o + _T_TABLE] = table
    tr[o + _T_STEP] = step
    tr[o + _T_K] = k
    tr[o + _T_KAPPA] = k00
    tr[o + _T_KAPPA + 1] = k01
    tr[o + _T_KAPPA + 2] = k10
    tr[o + _T_KAPPA + 3] = k11
    tr[o + _T_N] = 2 * k
    o += _T_HEADER
    for i in range(4 * k):
        tr[o + i] = dd[i]


@njit(cache=True)
def _prepare_multiplier(rho, kappa_e, e, st):
    """Bring E in D11 to the multiplier form of its case.

    Returns (table, swap) where swap means the B halves enter the P2 call as
    (B_hi, B_lo) instead of (B_lo, B_hi).
    """
    tag = classify_e(kappa_e, e)
    if tag == 0:
        st[CASE1_POS] += 1
        return 1, False
    if tag == 1:
        st[CASE1_NEG] += 1
        mpi_neg(rho, e)
        return 1, True
    if tag == 2:
        st[CASE2] += 1
        return 2, False
    if kappa_e == -1:
        st[CASE3_EXACT] += 1
    else:
        st[CASE3] += 1
    # -E - rho^k: rho^k - limbs for carry -2, zero at E = -rho^k
    mpi_neg(rho, e)
    return 3, True


@njit(cache=True)
def finalize_carries(rho, dd, k, k00, k01, k10, k11):
    """Fold kappa10 and kappa01 into the limbs; return the residual kappa00."""
    if k11 != 0:
        raise RuntimeError("kappa11 must be zero before carry finalization")
    k01 += mpi_add_c(rho, dd[k:2 * k], k10)
    k00 += mpi_add_c(rho, dd[:k], k01)
    return k00


@njit(cache=True)
def odd_extension(rho, d, a0, a1, b, carry):
    """Complete an odd-length (n = 2k+1) additive product.

    On entry d[1:4k+1] holds the even sub-result and ``carry`` its carry, d[0]
    still holds the top limb of C and d[4k+1] is zero.  ``a1`` may be empty (plain A*B).  Adds
    rho^(2k)*(A0 - A1)*b and (a0 - a1)*Bbar and returns the overall carry.
    """
    n = b.shape[0]
    out = mpi_add_c(rho, d[0:1], carry)
    r1 = d[:n + 1]
    r2 = d[n + 1:]
    bbar = b[1:]
    has_a1 = a1.shape[0] > 0
    diff = np.int64(a0[n - 1])
    if has_a1:
        diff -= np.int64(a1[n - 1])
    c2 = 0
    if diff > 0:
        c2 = mpi_addmul_scalar(rho, r2, bbar, diff)
    elif diff < 0:
        c2 = mpi_submul_scalar(rho, r2, bbar, -diff)
    if c2 != 0:
        out += mpi_add_c(rho, r1, c2)
    top = b[0]
    if top != 0:
        out += mpi_addmul_scalar(rho, r1, a0, top)
        if has_a1:
            out += mpi_submul_scalar(rho, r1, a1, top)
    return out


# -- the recursive kernel ----------------------------------------------------


@njit
def _kr(rho, d, a0, a1, b, top, threshold, st, tr):
    """(A0 - A1)*B + C*rho^n in d, or A0*B + C*rho^n when ``top``."""
    n = b.shape[0]
    st[DEPTH] += 1
    if st[DEPTH] > st[MAX_DEPTH]:
        st[MAX_DEPTH] = st[DEPTH]
    st[KR_CALLS] += 1
    if n < threshold or n < 2:
        if top:
            c = kr_mul_b1(rho, d, a0, b)
        else:
            c = kr_mul_b2(rho, d, a0, a1, b)
        st[DEPTH] -= 1
        return c

    odd = n & 1
    m = n - odd
    k = m // 2
    dd = d[odd:odd + 2 * m]
    x0 = a0[:m]
    x1 = a1[:m]
    y = b[odd:]
    d00 = dd[:k]
    d01 = dd[k:2 * k]
    d10 = dd[2 * k:3 * k]
    d11 = dd[3 * k:]
    b_hi = y[:k]
    b_lo = y[k:]
    _trace_enter(tr, st, top, dd, x0, x1, y, m)

    k00 = 0
    k01 = 0
    k10 = 0
    k11 = 0
    _trace_step(tr, st, top, 0, 0, dd, k, k00, k01, k10, k11)

    k01 = mpi_sub(rho, d01, d00)
    _trace_step(tr, st, top, 0, 1, dd, k, k00, k01, k10, k11)

    _copy(d11, x0[:k])
    if top:
        ke = mpi_sub(rho, d11, x0[k:])
    else:
        ke = mpi_sub(rho, d11, x1[:k])
        ke += mpi_sub(rho, d11, x0[k:])
        ke += mpi_add(rho, d11, x1[k:])
    table, swap = _prepare_multiplier(rho, ke, d11, st)
    if top and table != 1:
        raise RuntimeError("A_hi - A_lo must fall in case 1")
    _trace_step(tr, st, top, table, 2, dd, k, k00, k01, k10, k11)

    if swap:
        k01 += _kr(rho, dd[k:3 * k], b_hi, b_lo, d11, False, threshold, st, tr)
    else:
        k01 += _kr(rho, dd[k:3 * k], b_lo, b_hi, d11, False, threshold, st, tr)
    _trace_step(tr, st, top, table, 3, dd, k, k00, k01, k10, k11)

    s = 4
    if table == 2:
        k01 += mpi_add(rho, d01, b_lo)
        k01 += mpi_sub(rho, d01, b_hi)
        _trace_step(tr, st, top, table, 4, dd, k, k00, k01, k10, k11)
        s = 5
    elif table == 3:
        k01 += mpi_add(rho, d01, b_hi)
        k01 += mpi_sub(rho, d01, b_lo)
        _trace_step(tr, st, top, table, 4, dd, k, k00, k01, k10, k11)
        s = 5

    # D11 <- D01 - D10 (D01 is about to be overwritten by P0)
    _copy(d11, d01)
    k11 = k01 - k10 + mpi_sub(rho, d11, d10)
    _trace_step(tr, st, top, table, s, dd, k, k00, k01, k10, k11)

    k00 = _kr(rho, dd[:2 * k], x0[:k], x1[:k], b_hi, top, threshold, st, tr)
    k01 = 0
    _trace_step(tr, st, top, table, s + 1, dd, k, k00, k01, k10, k11)

    k10 += k01 + mpi_add(rho, d10, d01)
    _trace_step(tr, st, top, table, s + 2, dd, k, k00, k01, k10, k11)

    # D01 <- D11 + D00; D11 is dead afterwards
    _copy(d01, d11)
    k01 = k11 + k00 + mpi_add(rho, d01, d00)
    k11 = 0
    _trace_step(tr, st, top, table, s + 3, dd, k, k00, k01, k10, k11)

    k10 += _kr(rho, dd[2 * k:], x0[k:], x1[k:], b_lo, top, threshold, st, tr)
    _trace_step(tr, st, top, table, s + 4, dd, k, k00, k01, k10, k11)

    k01 += k10 + mpi_add(rho, d01, d10)
    _trace_step(tr, st, top, table, s + 5, dd, k, k00, k01, k10, k11)

    k10 += k11 + mpi_add(rho, d10, d11)
    _trace_step(tr, st, top, table, s + 6, dd, k, k00, k01, k10, k11)

    c = finalize_carries(rho, dd, k, k00, k01, k10, k11)
    _trace_step(tr, st, top, table, FINAL_STEP, dd, k, c, 0, 0, 0)

    if odd:
        d[2 * n - 1] = 0
        c = odd_extension(rho, d, a0, a1, b, c)
    st[DEPTH] -= 1
    return c


@njit
def _kr_mpi_mul(rho, d, a, b, threshold, st, tr):
    n = a.shape[0]
    m = b.shape[0]
    st[DEPTH] += 1
    if st[DEPTH] > st[MAX_DEPTH]:
        st[MAX_DEPTH] = st[DEPTH]
    if m < threshold:
        sb_mul(rho, d, a, b)
        st[DEPTH] -= 1
        return
    q = n // m
    r = n - q * m
    if r == 0:
        d[:m] = 0
    else:
        _kr_mpi_mul(rho, d[:m + r], b, a[:r], threshold, st, tr)
    for i in range(q):
        off = r + i * m
        c = _kr(rho, d[off:off + 2 * m], a[off:off + m], a[:0], b, True,
                threshold, st, tr)
        if c != 0:
            if mpi_add_c(rho, d[:off], c) != 0:
                raise RuntimeError("product overflowed its buffer")
    st[DEPTH] -= 1


@njit
def _mpi_mul_kr(rho, d, a, b, threshold, st, tr):
    if a.shape[0] < b.shape[0]:
        a, b = b, a
    if b.shape[0] == 0:
        d[:] = 0
        return
    _kr_mpi_mul(rho, d, a, b, threshold, st, tr)


# -- Python entry points -----------------------------------------------------

def _counters(stats):
    return stats.counters if stats is not None else new_counters()


def _call_bound(n, threshold):
    """Upper bound on the number of recursive kernel calls for size n."""
    if n < threshold or n < 2:
        return 1
    return 1 + 3 * _call_bound(n // 2, threshold)


def _run_traced(rho, d, a0, a1, b, top, threshold, stats, observer):
    st = _counters(stats)
    n = b.shape[0]
    if observer is None:
        return _kr(rho, d, a0, a1, b, top, threshold, st, st[:0])
    width = _T_HEADER + 5 * n
    tr = np.zeros(16 * _call_bound(n, threshold) * width, dtype=np.int64)
    st[TRACE_POS] = 0
    st[TRACE_OVERFLOW] = 0
    st[TRACE_WIDTH] = width
    c = _kr(rho, d, a0, a1, b, top, threshold, st, tr)
    if st[TRACE_OVERFLOW]:
        raise RuntimeError("trace buffer overflow")
    _replay(rho, tr[:st[TRACE_POS] * width].reshape(-1, width), observer)
    return c


def _replay(rho, rows, observer):
    calls = {}
    for row in rows:
        depth = int(row[_T_DEPTH])
        top = bool(row[_T_TOP])
        if row[_T_KIND] == _ENTER:
            m = int(row[_T_N])
            o = _T_HEADER
            limbs = [row[o + i * m:o + (i + 1) * m] for i in range(3)]
            c = row[o + 3 * m:o + 4 * m]
            calls[depth] = CallInfo(top, m // 2, to_int(limbs[0], rho),
                                    to_int(limbs[1], rho), to_int(limbs[2], rho),
                                    to_int(c, rho))
            continue
        k = int(row[_T_K])
        q = [to_int(row[_T_HEADER + i * k:_T_HEADER + (i + 1) * k], rho)
             for i in range(4)]
        kap = tuple(int(x) for x in row[_T_KAPPA:_T_KAPPA + 4])
        observer(StepEvent(depth, top, int(row[_T_TABLE]), int(row[_T_STEP]),
                           k, tuple(q), kap, calls[depth], rho ** k))


def _check_buffer(d, size):
    if d.dtype != np.uint16 or not d.flags.c_contiguous:
        raise TypeError("output buffer must be a C-contiguous uint16 array")
    if d.shape[0] != size:
        raise ValueError(f"output buffer needs {size} limbs, got {d.shape[0]}")


def kr_mul(rho, d, a0, a1, b, threshold=DEFAULT_THRESHOLD, stats=None,
           observer=None):
    """In place: d <- (A0 - A1)*B + C*rho^n with C preloaded in d[:n].

    Returns the carry.  ``observer`` receives a :class:`StepEvent` for every
    step snapshot of every even-length call.
    """
    rho = check_radix(rho)
    a0, a1, b = natural(a0, rho), natural(a1, rho), natural(b, rho)
    n = b.shape[0]
    if a0.shape[0] != n or a1.shape[0] != n or n == 0:
        raise ValueError("A0, A1 and B must share one positive length")
    _check_buffer(d, 2 * n)
    return int(_run_traced(rho, d, a0, a1, b, False, threshold, stats, observer))


def kr_mul_top(rho, d, a, b, threshold=DEFAULT_THRESHOLD, stats=None,
               observer=None):
    """In place: d <- A*B + C*rho^n with C preloaded in d[:n]; returns the carry."""
    rho = check_radix(rho)
    a, b = natural(a, rho), natural(b, rho)
    n = b.shape[0]
    if a.shape[0] != n or n == 0:
        raise ValueError("A and B must share one positive length")
    _check_buffer(d, 2 * n)
    return int(_run_traced(rho, d, a, a[:0], b, True, threshold, stats, observer))


def kr_mpi_mul(rho, d, a, b, threshold=DEFAULT_THRESHOLD, stats=None):
    """d <- A*B for len(A) >= len(B) >= 1."""
    rho = check_radix(rho)
    a, b = natural(a, rho), natural(b, rho)
    if not a.shape[0] >= b.shape[0] >= 1:
        raise ValueError("need len(A) >= len(B) >= 1")
    _check_buffer(d, a.shape[0] + b.shape[0])
    st = _counters(stats)
    _kr_mpi_mul(rho, d, a, b, threshold, st, st[:0])


def mpi_mul_kr(rho, a, b, d=None, threshold=DEFAULT_THRESHOLD, stats=None):
    """Product of two naturals of any lengths; returns the (n+m)-limb buffer."""
    rho = check_radix(rho)
    a, b = natural(a, rho), natural(b, rho)
    size = a.shape[0] + b.shape[0]
    if d is None:
        d = np.zeros(size, dtype=np.uint16)
    _check_buffer(d, size)
    st = _counters(stats)
    _mpi_mul_kr(rho, d, a, b, threshold, st, st[:0])
    return d


def finalize(rho, dd, carries):
    """Python face of the final carry pass; updates ``carries`` in place."""
    k = dd.shape[0] // 4
    c = finalize_carries(rho, dd, k, carries.kappa00, carries.kappa01,
                         carries.kappa10, carries.kappa11)
    carries.kappa00, carries.kappa01, carries.kappa10 = int(c), 0, 0
    return int(c)


__all__ = [
    "DEFAULT_THRESHOLD", "FINAL_STEP", "CallInfo", "ECase", "MulStats",
    "QuarterCarries", "StepEvent", "classify_e", "finalize",
    "finalize_carries", "kr_mpi_mul", "kr_mul", "kr_mul_top", "mpi_mul_kr",
    "odd_extension",
]
