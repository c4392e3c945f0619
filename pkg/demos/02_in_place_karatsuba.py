"""Watching the in-place Karatsuba fill its output buffer.

``kr_mul`` computes (A0 - A1)*B + C*rho^n with C already sitting in the top
half of D.  The observer hook reports every numbered step of every even-length
call, with the four quarters of D and their carries.  Below we print the top
call's steps for one operand set per E case, in radix 10 so the numbers can
be checked by eye.

Run:  python3 demos/02_in_place_karatsuba.py
"""

import numpy as np

from inplace_karatsuba import MulStats, kr_mul, to_int
from inplace_karatsuba.karatsuba_roche import FINAL_STEP

rho = 10


def show(label, a0, a1, b, c):
    a0, a1, b, c = (np.array(x, dtype=np.uint16) for x in (a0, a1, b, c))
    n = b.shape[0]
    d = np.zeros(2 * n, dtype=np.uint16)
    d[:n] = c
    events = []
    st = MulStats()
    carry = kr_mul(rho, d, a0, a1, b, threshold=2, stats=st, observer=events.append)
    print(f"\n{label}: ({to_int(a0, rho)} - {to_int(a1, rho)}) * {to_int(b, rho)}"
          f" + {to_int(c, rho)} * 10^{n}")
    print("  cases seen:", {k: v for k, v in st.case_counts.items() if v})
    print("  step table   D00+k00   D01+k01   D10+k10   D11+k11")
    for ev in events:
        if ev.depth != 1:
            continue           # only the outermost call
        step = "final" if ev.step == FINAL_STEP else ev.step
        cells = "".join(f"{ev.full(i):10d}" for i in range(4))
        print(f"  {step!s:>5} {ev.table:>4} {cells}")
    want = (to_int(a0, rho) - to_int(a1, rho)) * to_int(b, rho) + to_int(c, rho) * rho ** n
    got = carry * rho ** (2 * n) + to_int(d, rho)
    print(f"  result carry={carry} D={''.join(map(str, d))}  ->  {got} (expected {want})")


# E = A0_hi - A1_hi - A0_lo + A1_lo picks the step sequence
show("case 1, E >= 0", [4, 3, 2, 1], [1, 1, 1, 1], [5, 6, 7, 8], [0, 0, 1, 2])
show("case 1, E < 0", [1, 1, 7, 7], [0, 0, 0, 0], [9, 9, 9, 9], [3, 3, 3, 3])
show("case 2, E >= 10^k", [9, 9, 0, 0], [0, 0, 9, 9], [1, 2, 3, 4], [0, 0, 0, 0])
show("case 3, E <= -10^k", [0, 0, 9, 9], [9, 9, 0, 0], [1, 2, 3, 4], [5, 5, 5, 5])
show("E = -10^k exactly", [0, 0, 0, 1], [9, 9, 0, 0], [4, 3, 2, 1], [0, 0, 0, 0])

# Odd lengths peel one limb and reuse the even machinery one limb over.
show("odd n = 3", [1, 2, 3], [0, 1, 1], [2, 0, 4], [0, 0, 0])
