import subprocess
import sys

import pytest

from inplace_karatsuba.bench import (
    CSV_HEADER, BenchConfig, loglog_slope, read_csv, run_bench,
)
from inplace_karatsuba.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


@pytest.mark.parametrize("algo", ["sb", "ks", "kr"])
def test_mul_ff_ff(capsys, algo):
    assert run(capsys, "--radix-bits", "4", "mul", "ff", "ff", "--algo", algo)[:2] == (0, "fe01")


def test_mul_zero_and_large(capsys):
    assert run(capsys, "mul", "0", "abcdef")[:2] == (0, "0")
    x, y = "f" * 700, "e" * 650
    want = format(int(x, 16) * int(y, 16), "x")
    outs = {run(capsys, "--threshold", "4", "mul", x, y, "--algo", a)[1] for a in ("sb", "ks", "kr")}
    assert outs == {want}


def test_mul_options_after_subcommand(capsys):
    assert run(capsys, "mul", "ff", "ff", "--radix-bits", "4")[:2] == (0, "fe01")


@pytest.mark.parametrize("argv", [["mul", "zz", "1"], ["mul", "", "1"],
                                  ["--radix-bits", "17", "mul", "1", "1"],
                                  ["--threshold", "0", "mul", "1", "1"]])
def test_mul_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["mul", "1"])
    assert exc.value.code == 2


def test_verify_ok_and_deterministic(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "400", "--max-len", "24", "--seed", "3")
    assert code == 0 and out.startswith("OK")
    for tag in ("C1+", "C1-", "C2", "C3", "E=-rho^k"):
        assert f"{tag}=" in out and f"{tag}=0 " not in out + " "
    assert run(capsys, "verify", "--trials", "400", "--max-len", "24", "--seed", "3")[1] == out


def test_verify_zero_trials(capsys):
    code, out, err = run(capsys, "verify", "--trials", "0")
    assert code == 0 and "vacuous" in out and "warning" in err


def test_verify_too_few_trials_fails(capsys):
    # one trial cannot touch every case, which counts as failure
    code, out, _ = run(capsys, "verify", "--trials", "1")
    assert code == 1 and "never exercised" in out


def test_bench_csv(tmp_path, capsys):
    path = tmp_path / "b.csv"
    code, _, err = run(capsys, "bench", "--min", "16", "--max", "64", "--threshold", "8",
                       "--reps-budget", "4096", "--out", str(path))
    assert code == 0
    text = path.read_text()
    assert text.splitlines()[0] == ",".join(CSV_HEADER)
    recs = read_csv(text)
    assert [(r.n, r.algo) for r in recs] == [(n, a) for n in (16, 32, 64) for a in ("SB", "KS", "KR")]
    for r in recs:
        assert r.avg_ns == pytest.approx(r.total_ns / r.reps, abs=0.1)
        if r.algo == "KR":
            assert r.heap_allocs == 0 and r.peak_scratch_limbs == 0
        if r.algo == "KS":
            assert 0 < r.peak_scratch_limbs <= 2 * r.n
    reps = [r.reps for r in recs if r.algo == "SB"]
    assert reps == sorted(reps, reverse=True)


def test_bench_step_grid_and_subset(capsys):
    code, out, _ = run(capsys, "bench", "--min", "10", "--max", "30", "--step", "10",
                       "--algos", "kr", "--reps-budget", "100")
    assert code == 0
    recs = read_csv(out + "\n")
    assert [(r.n, r.algo) for r in recs] == [(10, "KR"), (20, "KR"), (30, "KR")]


@pytest.mark.parametrize("argv", [["bench", "--algos", "xx"],
                                  ["bench", "--min", "10", "--max", "5"],
                                  ["bench", "--min", "8", "--max", "8", "--out", "/nonexistent/dir/x.csv"]])
def test_bench_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_default_grid_row_count():
    cfg = BenchConfig()
    assert cfg.lengths() == [128, 256, 512, 1024, 2048, 4096, 8192]
    assert len(cfg.lengths()) * len(cfg.algos) == 21
    assert all(cfg.reps(a) >= cfg.reps(b) for a, b in zip(cfg.lengths(), cfg.lengths()[1:]))


def test_slope_helper():
    recs = run_bench(BenchConfig(lengths_override=(32, 64), algos=("SB",), threshold=8,
                                 reps_budget=1 << 16))
    assert 1.0 < loglog_slope(recs, "SB") < 3.0
    with pytest.raises(ValueError):
        loglog_slope(recs, "KS")


def test_console_module_entry():
    r = subprocess.run([sys.executable, "-m", "inplace_karatsuba", "--radix-bits", "8",
                        "mul", "0100", "ff"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "ff00"
