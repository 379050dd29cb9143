import subprocess
import sys
from pathlib import Path

import pytest

from jacobi.cli import Config, main

DATA = Path(__file__).parent / "data"


def run(argv, capsys):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_dims_circle(capsys):
    code, out, _ = run(["dims", "--skeleton", "O", "--cap", "4"], capsys)
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()[1:]]
    assert [int(r[1]) for r in rows] == [1, 1, 2, 3, 6]


def test_dims_chord_agrees(capsys):
    _, a, _ = run(["dims", "--skeleton", "O", "--cap", "3"], capsys)
    _, c, _ = run(["dims", "--space", "Achord", "--skeleton", "O", "--cap", "3"], capsys)
    dims = lambda s: [r.split("\t")[1] for r in s.splitlines()[1:]]
    assert dims(a) == dims(c)


def test_output_is_deterministic_across_processes():
    cmd = [sys.executable, "-m", "jacobi", "zk", "--tangle", "trefoil_right", "--cap", "3"]
    first = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert first == second and "coefficient" in first


def test_reduce_named(capsys):
    code, out, _ = run(["reduce", "--element", "Omega", "--cap", "2"], capsys)
    assert code == 0 and len(out.splitlines()) >= 2


def test_eval_lie_trace(capsys):
    code, out, _ = run(["eval-lie", "--element", "C", "--cap", "2", "--trace", "fund"], capsys)
    assert code == 0
    trace = [line for line in out.splitlines() if line.startswith("trace")][0]
    assert trace.split("\t")[1].split() == ["0", "3"]


def test_assoc_check_accepts_frozen_table(capsys):
    code, out, _ = run(["assoc", "check", str(DATA / "phi_cap4.tsv")], capsys)
    assert code == 0 and "FAIL" not in out


def test_assoc_check_rejects_perturbed_table(tmp_path, capsys):
    text = (DATA / "phi_cap4.tsv").read_text().replace("-1/24", "-1/12", 1)
    f = tmp_path / "bad.tsv"
    f.write_text(text)
    code, out, _ = run(["assoc", "check", str(f)], capsys)
    assert code == 1 and "FAIL" in out


def test_error_exit_code(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("skeleton I\nnonsense here\n")
    code, _, err = run(["reduce", str(f)], capsys)
    assert code == 2 and err.startswith("error:")
    code, _, err = run(["zk", "--tangle", "no_such_tangle"], capsys)
    assert code == 2


def test_unknown_suite(capsys):
    code, _, err = run(["verify", "nope"], capsys)
    assert code == 2 and "unknown suite" in err


def test_verify_single_suite_and_out(tmp_path, capsys):
    code, out, _ = run(["verify", "dims", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert out.strip().endswith("TOTAL 1/1 suites passed")
    assert (tmp_path / "verify.txt").read_text() == out


def test_guard_trips():
    # a fresh process, so no cached space bypasses the guard
    cmd = [sys.executable, "-m", "jacobi", "dims", "--skeleton", "I", "--cap", "4",
           "--guard-diagrams", "3"]
    p = subprocess.run(cmd, capture_output=True, text=True)
    assert p.returncode == 2 and p.stderr.startswith("error:")


def test_guards_are_restored(capsys):
    from jacobi import diagram as dg
    before = (dg.CONFIG.guard, dg.CONFIG.rows_guard)
    run(["dims", "--skeleton", "O", "--cap", "1", "--guard-diagrams", "7", "--guard-rows", "9"], capsys)
    assert (dg.CONFIG.guard, dg.CONFIG.rows_guard) == before


def test_config_validation():
    with pytest.raises(ValueError):
        Config(cap=-1)
    with pytest.raises(ValueError):
        Config(guard_rows=0)
