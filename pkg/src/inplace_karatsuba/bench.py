"""Timing and allocation measurements for square multiplications."""

import csv
import io
import time
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .instrument import KS_PEAK, AllocationCounter, _probe, new_counters
from .karatsuba_roche import DEFAULT_THRESHOLD
from .multiply import ALGOS, KERNELS

CSV_HEADER = ("n", "algo", "reps", "total_ns", "avg_ns", "peak_scratch_limbs",
              "heap_allocs")


@dataclass
class BenchRecord:
    n: int
    algo: str
    reps: int
    total_ns: int
    avg_ns: float
    peak_scratch_limbs: int
    heap_allocs: int


@dataclass
class BenchConfig:
    min_len: int = 128
    max_len: int = 8192
    step: int | None = None          # arithmetic grid when set
    geometric: float = 2.0           # otherwise lengths grow by this factor
    algos: tuple = ALGOS
    threshold: int = DEFAULT_THRESHOLD
    seed: int = 0
    radix_bits: int = 16
    reps_budget: int = 1 << 22       # reps(n) = max(min_reps, budget // n^2)
    min_reps: int = 4
    lengths_override: tuple | None = field(default=None, repr=False)

    def lengths(self):
        if self.lengths_override is not None:
            return sorted(set(self.lengths_override))
        if self.min_len < 1 or self.max_len < self.min_len:
            raise ValueError("need 1 <= min_len <= max_len")
        if self.step is not None:
            if self.step < 1:
                raise ValueError("step must be positive")
            return list(range(self.min_len, self.max_len + 1, self.step))
        if self.geometric <= 1:
            raise ValueError("geometric factor must exceed 1")
        out = []
        n = float(self.min_len)
        while round(n) <= self.max_len:
            if not out or round(n) != out[-1]:
                out.append(round(n))
            n *= self.geometric
        return out

    def reps(self, n):
        return max(self.min_reps, self.reps_budget // (n * n))


def measure(kernel, rho, n, reps, threshold, rng):
    """Time ``reps`` multiplications of one random n x n pair."""
    a = rng.integers(0, rho, n).astype(np.uint16)
    b = rng.integers(0, rho, n).astype(np.uint16)
    d = np.zeros(2 * n, dtype=np.uint16)
    st = new_counters()
    kernel(rho, d, a, b, threshold, st)          # warm-up, excluded
    st[:] = 0
    _probe(rho, d, a, b, threshold, st)
    with AllocationCounter() as base:
        _probe(rho, d, a, b, threshold, st)
    with AllocationCounter() as ac:
        t0 = time.perf_counter_ns()
        for _ in range(reps):
            kernel(rho, d, a, b, threshold, st)
        total = time.perf_counter_ns() - t0
    allocs = ac.allocs - reps * base.allocs
    return total, int(st[KS_PEAK]), allocs


def run_bench(config, progress=None):
    rho = 1 << config.radix_bits
    rng = np.random.default_rng(config.seed)
    algos = [a.upper() for a in config.algos]
    for a in algos:
        if a not in KERNELS:
            raise ValueError(f"unknown algorithm {a!r}")
    records = []
    for n in config.lengths():
        reps = config.reps(n)
        for algo in algos:
            total, peak, allocs = measure(KERNELS[algo], rho, n, reps,
                                          config.threshold, rng)
            rec = BenchRecord(n, algo, reps, total, total / reps, peak, allocs)
            records.append(rec)
            if progress is not None:
                progress(rec)
    records.sort(key=lambda r: (r.n, ALGOS.index(r.algo)))
    return records


def write_csv(records, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        row = asdict(r)
        row["avg_ns"] = f"{r.avg_ns:.1f}"
        w.writerow([row[f.name] for f in fields(BenchRecord)])


def read_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    return [BenchRecord(int(r["n"]), r["algo"], int(r["reps"]),
                        int(r["total_ns"]), float(r["avg_ns"]),
                        int(r["peak_scratch_limbs"]), int(r["heap_allocs"]))
            for r in rows]


def loglog_slope(records, algo, lengths=None):
    """Least-squares slope of log2(avg_ns) against log2(n)."""
    pts = [(r.n, r.avg_ns) for r in records
           if r.algo == algo and (lengths is None or r.n in lengths)]
    if len(pts) < 2:
        raise ValueError(f"need two or more {algo} rows for a slope")
    x = np.log2([p[0] for p in pts])
    y = np.log2([p[1] for p in pts])
    return float(np.polyfit(x, y, 1)[0])
