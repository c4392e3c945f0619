"""Space and time: schoolbook, standard Karatsuba and the in-place variant.

Standard Karatsuba needs a scratch arena (2*floor(n/2) limbs per level, just
under 2n in total).  The in-place variant needs none: after the output buffer
exists it performs no heap allocation at all, and its stack depth grows like
log2(n).  Timing is a small sweep; the full experiment is
``inplace-karatsuba bench``.

Run:  python3 demos/03_space_and_time.py
"""

import numpy as np

from inplace_karatsuba import MulStats, ks_scratch_size, kernel_allocations
from inplace_karatsuba.bench import BenchConfig, loglog_slope, run_bench
from inplace_karatsuba.multiply import KERNELS

rho = 2 ** 16
rng = np.random.default_rng(0)

print("n      KS arena   KR allocs   KR depth")
for n in (256, 1024, 4096):
    a = rng.integers(0, rho, n).astype(np.uint16)
    b = rng.integers(0, rho, n).astype(np.uint16)
    d = np.empty(2 * n, dtype=np.uint16)
    st = MulStats()
    KERNELS["KR"](rho, d, a, b, 128, st.counters)
    allocs = kernel_allocations(KERNELS["KR"], rho, d, a, b, 128, st.counters)
    print(f"{n:<6} {ks_scratch_size(n, 128):>8}   {allocs:>9}   {st.max_depth:>8}")

cfg = BenchConfig(lengths_override=(256, 512, 1024, 2048), reps_budget=1 << 22)
records = run_bench(cfg)
print("\nn      SB ms     KS ms     KR ms")
for n in cfg.lengths():
    row = {r.algo: r.avg_ns / 1e6 for r in records if r.n == n}
    print(f"{n:<6} {row['SB']:8.2f}  {row['KS']:8.2f}  {row['KR']:8.2f}")
for algo in ("SB", "KS", "KR"):
    print(f"log-log slope {algo}: {loglog_slope(records, algo):.2f}")
print("(log2 3 = 1.585)")
