"""Limbs, radices and the carry that travels beside them.

A natural is a uint16 array, most significant limb first.  Every primitive
works in place and hands back a small signed carry instead of growing the
array, so ``carry * rho**n + value(limbs)`` is the quantity that is preserved.

Run:  python3 demos/01_limbs_and_carries.py
"""

import numpy as np

from inplace_karatsuba import (
    from_int, mpi_add, mpi_add_c, mpi_addmul_scalar, mpi_neg, mpi_sub,
    parse_hex, to_dec, to_hex, to_int,
)

rho = 10
a = np.array([2, 7], dtype=np.uint16)
c = mpi_add(rho, a, np.array([5, 8], dtype=np.uint16))
print("27 + 58  ->", a, "carry", c)

a = np.array([1, 5], dtype=np.uint16)
c = mpi_sub(rho, a, np.array([3, 2], dtype=np.uint16))
# 15 - 32 = -17 = -1*100 + 83
print("15 - 32  ->", a, "carry", c, "=", c * rho ** 2 + to_int(a, rho))

a = np.array([2, 5], dtype=np.uint16)
f = mpi_neg(rho, a)
print("neg 25   ->", a, "flag", f)

a = np.array([9, 9], dtype=np.uint16)
print("99 + 1   -> carry", mpi_add_c(rho, a, 1), a)

a = np.zeros(3, dtype=np.uint16)
mpi_addmul_scalar(rho, a, np.array([4, 7], dtype=np.uint16), 3)
print("3 * 47   ->", a)

# The radix is a runtime parameter; 2**16 fills a uint16 limb.
x = parse_hex("123456789abcdef0fedcba", 2 ** 16)
print("\nhex in radix 2^16:", x, "->", to_hex(x, 2 ** 16))
y = from_int(10 ** 30, 1000)
print("10^30 in radix 1000:", y, "->", to_dec(y, 1000))
