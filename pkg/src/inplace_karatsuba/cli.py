"""Command-line front end: ``mul``, ``verify`` and ``bench``.

Exit codes: 0 success, 1 verification mismatch (or untouched case), 2 usage
or parse error.
"""

import argparse
import sys

from .bench import BenchConfig, run_bench, write_csv
from .karatsuba_roche import DEFAULT_THRESHOLD
from .limb_core import parse_hex, to_hex
from .multiply import ALGOS, multiply
from .verify import DEFAULT_RADICES, run_verify


def _common(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--radix-bits", type=int, default=default(16),
                        help="limb radix is 2**BITS, 1..16 (default 16)")
    parser.add_argument("--threshold", type=int, default=default(DEFAULT_THRESHOLD),
                        help="Karatsuba threshold in limbs (default 128)")
    parser.add_argument("--seed", type=int, default=default(0))


def _csv_ints(text):
    try:
        return tuple(int(x) for x in text.split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}")


def build_parser():
    p = argparse.ArgumentParser(prog="inplace-karatsuba",
                                description="Space-efficient Karatsuba multiplication")
    _common(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mul", help="multiply two hex numerals")
    _common(m, suppress=True)
    m.add_argument("a")
    m.add_argument("b")
    m.add_argument("--algo", default="kr", type=str.lower,
                   choices=[a.lower() for a in ALGOS])

    v = sub.add_parser("verify", help="differential test SB vs KS vs KR")
    _common(v, suppress=True)
    v.add_argument("--trials", type=int, default=2000)
    v.add_argument("--max-len", type=int, default=64)
    v.add_argument("--radices", type=_csv_ints, default=DEFAULT_RADICES,
                   help="comma-separated radices to cycle through")

    b = sub.add_parser("bench", help="time square multiplications, write CSV")
    _common(b, suppress=True)
    b.add_argument("--min", dest="min_len", type=int, default=128)
    b.add_argument("--max", dest="max_len", type=int, default=8192)
    grid = b.add_mutually_exclusive_group()
    grid.add_argument("--step", type=int, help="arithmetic length grid")
    grid.add_argument("--geometric", type=float, default=2.0,
                      help="geometric growth factor (default 2)")
    b.add_argument("--algos", default="sb,ks,kr",
                   help="comma-separated subset of sb,ks,kr")
    b.add_argument("--reps-budget", type=int, default=1 << 22,
                   help="reps(n) = max(4, budget // n^2)")
    b.add_argument("--out", help="CSV path (default: standard output)")
    return p


def cmd_mul(args):
    rho = 1 << args.radix_bits
    try:
        a = parse_hex(args.a, rho)
        b = parse_hex(args.b, rho)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(to_hex(multiply(rho, a, b, args.algo, args.threshold), rho))
    return 0


def cmd_verify(args):
    if args.trials == 0:
        print("warning: --trials 0, nothing verified", file=sys.stderr)
    report = run_verify(args.trials, args.max_len, args.radices, args.seed,
                        args.threshold)
    print(report.summary())
    return 0 if report.ok else 1


def cmd_bench(args):
    algos = tuple(a.strip().upper() for a in args.algos.split(",") if a.strip())
    bad = [a for a in algos if a not in ALGOS]
    if bad or not algos:
        print(f"error: unknown algorithms {bad}", file=sys.stderr)
        return 2
    cfg = BenchConfig(min_len=args.min_len, max_len=args.max_len, step=args.step,
                      geometric=args.geometric, algos=algos,
                      threshold=args.threshold, seed=args.seed,
                      radix_bits=args.radix_bits, reps_budget=args.reps_budget)
    try:
        cfg.lengths()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    log = lambda r: print(f"n={r.n:6d} {r.algo} avg {r.avg_ns / 1e3:12.1f} us",
                          file=sys.stderr)
    records = run_bench(cfg, progress=log)
    try:
        if args.out:
            with open(args.out, "w", newline="") as fh:
                write_csv(records, fh)
        else:
            write_csv(records, sys.stdout)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    if not 1 <= args.radix_bits <= 16:
        print("error: --radix-bits must lie in 1..16", file=sys.stderr)
        return 2
    if args.threshold < 1:
        print("error: --threshold must be positive", file=sys.stderr)
        return 2
    handler = {"mul": cmd_mul, "verify": cmd_verify, "bench": cmd_bench}
    return handler[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
