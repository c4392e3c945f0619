"""Differential testing of SB, KS and KR against each other and exact integers."""

from dataclasses import dataclass, field

import numpy as np

from .instrument import CASE_LABELS, MulStats
from .karatsuba_roche import _kr
from .limb_core import from_int, to_int
from .multiply import ALGOS, KERNELS
from .schoolbook import kr_mul_b2

DEFAULT_RADICES = (2, 4, 10, 256, 65536)


@dataclass
class Failure:
    rho: int
    threshold: int
    what: str
    operands: tuple

    @property
    def size(self):
        return sum(len(x) for x in self.operands)

    def describe(self):
        ops = ", ".join(str([int(v) for v in x]) for x in self.operands)
        return f"{self.what} rho={self.rho} threshold={self.threshold}: {ops}"


@dataclass
class VerifyReport:
    trials: int = 0
    stats: MulStats = field(default_factory=MulStats)
    failures: list = field(default_factory=list)

    @property
    def cases(self):
        return self.stats.case_counts

    @property
    def all_cases_hit(self):
        return all(v > 0 for v in self.cases.values())

    @property
    def ok(self):
        return not self.failures and (self.trials == 0 or self.all_cases_hit)

    def summary(self):
        hits = " ".join(f"{k}={v}" for k, v in self.cases.items())
        if self.failures:
            worst = min(self.failures, key=lambda f: f.size)
            return (f"FAIL: {len(self.failures)} mismatches in {self.trials} trials; "
                    f"smallest: {worst.describe()}")
        if self.trials == 0:
            return "OK (vacuous: no trials run)"
        if not self.all_cases_hit:
            missing = [k for k, v in self.cases.items() if v == 0]
            return f"FAIL: cases never exercised: {' '.join(missing)} ({hits})"
        return f"OK, {self.trials} trials, cases hit: {hits}"


def _operand(rng, rho, n):
    """Random natural of n limbs, sometimes from an adversarial family."""
    kind = rng.integers(0, 8)
    if kind == 0:
        return np.full(n, rho - 1, dtype=np.uint16)
    if kind == 1:
        x = np.zeros(n, dtype=np.uint16)
        x[0] = rho - 1
        x[-1] = 1
        return x
    if kind == 2:
        # long runs of max or zero limbs stress carry ripple
        x = np.where(rng.random(n) < 0.5, rho - 1, 0).astype(np.uint16)
        return x
    return rng.integers(0, rho, n).astype(np.uint16)


def engineered_halves(rho, k, case, rng):
    """A0, A1 (2k limbs each) whose cross-difference E lands in ``case``.

    Cases: "C1+", "C1-", "C2", "C3", "E=-rho^k".
    """
    R = rho ** k
    top = R - 1
    rand = to_int(rng.integers(0, rho, k), rho)
    if case == "C2":
        hi0, hi1, lo0, lo1 = top, 0, 0, top
    elif case == "C3":
        hi0, hi1, lo0, lo1 = 0, top, top, 0
    elif case == "E=-rho^k":
        hi0, hi1, lo0, lo1 = 0, top, 1, 0
    elif case == "C1+":
        hi0, hi1, lo0, lo1 = rand, 0, 0, 0
    else:
        hi0, hi1, lo0, lo1 = 0, rand or 1, 0, 0
    return (from_int(hi0 * R + lo0, rho, 2 * k),
            from_int(hi1 * R + lo1, rho, 2 * k))


def _check_products(report, rho, thr, a, b):
    exact = to_int(a, rho) * to_int(b, rho)
    outs = {}
    for algo in ALGOS:
        d = np.zeros(a.shape[0] + b.shape[0], dtype=np.uint16)
        KERNELS[algo](rho, d, a, b, thr, report.stats.counters)
        outs[algo] = d
    ref = outs["SB"]
    if to_int(ref, rho) != exact:
        report.failures.append(Failure(rho, thr, "SB vs exact", (a, b)))
    for algo in ("KS", "KR"):
        if not np.array_equal(outs[algo], ref):
            report.failures.append(Failure(rho, thr, f"{algo} vs SB", (a, b)))


def _check_engineered(report, rho, thr, k, case, rng):
    a0, a1 = engineered_halves(rho, k, case, rng)
    n = 2 * k
    b = _operand(rng, rho, n)
    c = _operand(rng, rho, n)
    d1 = np.zeros(2 * n, dtype=np.uint16)
    d2 = np.zeros(2 * n, dtype=np.uint16)
    d1[:n] = c
    d2[:n] = c
    st = report.stats.counters
    c1 = _kr(rho, d1, a0, a1, b, False, thr, st, st[:0])
    c2 = kr_mul_b2(rho, d2, a0, a1, b)
    exact = ((to_int(a0, rho) - to_int(a1, rho)) * to_int(b, rho)
             + to_int(c, rho) * rho ** n)
    if c1 != c2 or not np.array_equal(d1, d2) or \
            c1 * rho ** (2 * n) + to_int(d1, rho) != exact:
        report.failures.append(Failure(rho, thr, f"kr_mul[{case}] vs base case",
                                       (a0, a1, b, c)))


def run_verify(trials=2000, max_len=64, radices=DEFAULT_RADICES, seed=0,
               threshold=128):
    """Run ``trials`` differential checks; deterministic for a fixed seed.

    Three of every four trials multiply random or adversarial operands with
    all three algorithms; the fourth drives kr_mul directly with operands
    built to land in a chosen E case.
    """
    rng = np.random.default_rng(seed)
    report = VerifyReport()
    thresholds = sorted({2, 3, 4, 8, threshold})
    labels = list(CASE_LABELS.values())
    for i in range(trials):
        rho = int(radices[i % len(radices)])
        thr = int(thresholds[rng.integers(0, len(thresholds))])
        if i % 4 == 3:
            k = int(rng.integers(1, max(2, max_len // 2) + 1))
            case = labels[(i // 4) % len(labels)]
            _check_engineered(report, rho, max(2, min(thr, k)), k, case, rng)
        else:
            n = int(rng.integers(1, max_len + 1))
            m = int(rng.integers(1, max_len + 1))
            _check_products(report, rho, thr, _operand(rng, rho, n),
                            _operand(rng, rho, m))
        report.trials += 1
    return report
