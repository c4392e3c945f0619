"""Multi-precision natural-number multiplication: schoolbook, standard
Karatsuba, and the in-place Karatsuba variant that needs only O(log n)
auxiliary space.

Naturals are ``uint16`` arrays, most significant limb first, in a radix
``2 <= rho <= 2**16``.
"""

from .instrument import AllocationCounter, MulStats, kernel_allocations
from .karatsuba_roche import (
    ECase, QuarterCarries, StepEvent, classify_e, kr_mpi_mul, kr_mul,
    kr_mul_top, mpi_mul_kr,
)
from .karatsuba_std import ScratchArena, ks_mul, ks_scratch_size
from .limb_core import (
    from_int, mpi_add, mpi_add_c, mpi_addmul_scalar, mpi_neg, mpi_sub,
    mpi_submul_scalar, natural, parse_dec, parse_hex, to_dec, to_hex, to_int,
)
from .multiply import ALGOS, multiply
from .schoolbook import kr_mul_b1, kr_mul_b2, sb_mul

__version__ = "0.1.0"
