"""Run every acceptance suite and print one line per criterion.

Usage: python scripts/run_acceptance.py [--cap N] [--dcap N] [--hcap N]
Exit status is 0 only if all criteria pass.
"""
import argparse
import sys
import time

from jacobi.suites import SUITES, SuiteConfig, run_suite


def main() -> int:
    p = argparse.ArgumentParser()
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--dcap", type=int, default=2)
    p.add_argument("--hcap", type=int, default=4)
    a = p.parse_args()
    cfg = SuiteConfig(cap=a.cap, dcap=a.dcap, hcap=a.hcap)
    failed = 0
    for n, name in enumerate(SUITES, start=1):
        t0 = time.perf_counter()
        r = run_suite(name, cfg)
        failed += not r.passed
        print(f"{n:2d} {'PASS' if r.passed else 'FAIL'}  {r.title}  ({time.perf_counter() - t0:.1f}s)",
              flush=True)
    print(f"{len(SUITES) - failed}/{len(SUITES)} criteria passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
