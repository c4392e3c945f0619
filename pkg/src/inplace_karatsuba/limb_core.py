"""Limb-level primitives for natural numbers in radix ``rho``.

A natural number of ``n`` limbs is a 1-D ``uint16`` array, most significant
limb first, so that ``value(a) = sum(a[i] * rho**(n - 1 - i))``.  The radix is
a runtime argument with ``2 <= rho <= 2**16``.

Every primitive mutates its first array in place and returns a small signed
carry ``c`` such that ``c * rho**n + value(new a)`` equals the exact result.
Carries are never stored in the arrays themselves.

All kernels are compiled with numba and may be called from Python with
C-contiguous ``uint16`` arrays (see :func:`natural`) or from other kernels.
"""

import re

import numpy as np
from numba import njit

LIMB_DTYPE = np.uint16
MAX_RADIX = 1 << 16

_HEX_RE = re.compile(r"[0-9a-fA-F]+")
_DEC_RE = re.compile(r"[0-9]+")


def check_radix(rho):
    rho = int(rho)
    if not 2 <= rho <= MAX_RADIX:
        raise ValueError(f"radix must lie in [2, 2**16], got {rho}")
    return rho


# -- primitives ------------------------------------------------------------


@njit(cache=True)
def mpi_add(rho, a, b):
    """a += b over equal lengths; returns carry 0 or 1."""
    c = 0
    for i in range(a.shape[0] - 1, -1, -1):
        t = np.int64(a[i]) + np.int64(b[i]) + c
        if t >= rho:
            a[i] = t - rho
            c = 1
        else:
            a[i] = t
            c = 0
    return c


@njit(cache=True)
def mpi_sub(rho, a, b):
    """a -= b over equal lengths; returns carry 0 or -1."""
    c = 0
    for i in range(a.shape[0] - 1, -1, -1):
        t = np.int64(a[i]) - np.int64(b[i]) + c
        if t < 0:
            a[i] = t + rho
            c = -1
        else:
            a[i] = t
            c = 0
    return c


@njit(cache=True)
def mpi_neg(rho, a):
    """Replace a non-zero ``a`` by ``rho**n - a`` and return 1; return 0 if zero.

    Either way ``-old = -flag * rho**n + new``.
    """
    n = a.shape[0]
    i = n - 1
    while i >= 0 and a[i] == 0:
        i -= 1
    if i < 0:
        return 0
    a[i] = rho - np.int64(a[i])
    for j in range(i - 1, -1, -1):
        a[j] = rho - 1 - np.int64(a[j])
    return 1


@njit(cache=True)
def mpi_add_c(rho, a, kappa):
    """Add the signed carry ``kappa`` at the least significant limb.

    Stops as soon as the running carry dies out, so the cost is the length
    of the ripple, not of ``a``.
    """
    c = np.int64(kappa)
    i = a.shape[0] - 1
    while c != 0 and i >= 0:
        t = np.int64(a[i]) + c
        q = t // rho
        a[i] = t - q * rho
        c = q
        i -= 1
    return c


@njit(cache=True)
def mpi_addmul_scalar(rho, a, b, s):
    """a += s * b where len(a) >= len(b) and the operands are LSB-aligned."""
    n = a.shape[0]
    m = b.shape[0]
    if s == 0:
        return 0
    off = n - m
    c = np.int64(0)
    s = np.int64(s)
    for j in range(m - 1, -1, -1):
        t = np.int64(a[off + j]) + s * np.int64(b[j]) + c
        c = t // rho
        a[off + j] = t - c * rho
    if c != 0 and off > 0:
        c = mpi_add_c(rho, a[:off], c)
    return c


@njit(cache=True)
def mpi_submul_scalar(rho, a, b, s):
    """a -= s * b, LSB-aligned; returns the (non-positive) carry."""
    n = a.shape[0]
    m = b.shape[0]
    if s == 0:
        return 0
    off = n - m
    c = np.int64(0)
    s = np.int64(s)
    for j in range(m - 1, -1, -1):
        t = np.int64(a[off + j]) - s * np.int64(b[j]) + c
        c = t // rho
        a[off + j] = t - c * rho
    if c != 0 and off > 0:
        c = mpi_add_c(rho, a[:off], c)
    return c


@njit(cache=True)
def mpi_cmp(a, b):
    """Three-way comparison of equal-length naturals."""
    for i in range(a.shape[0]):
        if a[i] != b[i]:
            return 1 if a[i] > b[i] else -1
    return 0


@njit(cache=True)
def is_zero(a):
    for i in range(a.shape[0]):
        if a[i] != 0:
            return False
    return True


# -- conversions -----------------------------------------------------------


def natural(limbs, rho=None):
    """Return ``limbs`` as a fresh C-contiguous uint16 array, range-checked."""
    arr = np.array(limbs, dtype=np.int64).ravel()
    if rho is not None:
        rho = check_radix(rho)
        if arr.size and (arr.min() < 0 or arr.max() >= rho):
            raise ValueError(f"limbs must lie in [0, {rho})")
    return np.ascontiguousarray(arr, dtype=LIMB_DTYPE)


def to_int(limbs, rho):
    v = 0
    for x in limbs:
        v = v * rho + int(x)
    return v


def from_int(value, rho, n=None):
    """Limbs of ``value``; minimal length (at least one limb) unless ``n`` is given."""
    if value < 0:
        raise ValueError("naturals are non-negative")
    digits = []
    while value:
        value, r = divmod(value, rho)
        digits.append(r)
    if n is None:
        n = max(1, len(digits))
    elif len(digits) > n:
        raise OverflowError(f"value needs {len(digits)} limbs, only {n} available")
    digits.extend([0] * (n - len(digits)))
    return np.array(digits[::-1], dtype=LIMB_DTYPE)


def parse_hex(text, rho, n=None):
    """Parse a hex numeral into limbs of a power-of-two radix."""
    rho = check_radix(rho)
    if rho & (rho - 1):
        raise ValueError("hex I/O needs a power-of-two radix")
    if not _HEX_RE.fullmatch(text):
        raise ValueError(f"not a hex numeral: {text!r}")
    return from_int(int(text, 16), rho, n)


def to_hex(limbs, rho):
    rho = check_radix(rho)
    if rho & (rho - 1):
        raise ValueError("hex I/O needs a power-of-two radix")
    return format(to_int(limbs, rho), "x")


def parse_dec(text, rho, n=None):
    rho = check_radix(rho)
    if not _DEC_RE.fullmatch(text):
        raise ValueError(f"not a decimal numeral: {text!r}")
    return from_int(int(text), rho, n)


def to_dec(limbs, rho):
    return str(to_int(limbs, check_radix(rho)))
