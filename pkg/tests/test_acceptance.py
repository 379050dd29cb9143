"""One pass/fail line per acceptance criterion, each backed by a suite."""
import time

import pytest

from jacobi.suites import SUITES, SuiteConfig, run_suite

CRITERIA = list(enumerate(SUITES, start=1))


@pytest.mark.parametrize("number,name", CRITERIA, ids=[f"{n:02d}-{s}" for n, s in CRITERIA])
def test_criterion(number, name, capsys):
    t0 = time.perf_counter()
    r = run_suite(name, SuiteConfig())
    elapsed = time.perf_counter() - t0
    with capsys.disabled():
        print(f"\nCRITERION {number:2d} {'PASS' if r.passed else 'FAIL'}  {r.title}  ({elapsed:.1f}s)")
        for label, ok, _ in r.checks:
            if not ok:
                print(f"    failed: {label}")
    assert r.passed, [label for label, ok, _ in r.checks if not ok]
