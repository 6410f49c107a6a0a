#!/usr/bin/env python3
"""Run certification suites and print one machine line per suite.

Usage: python scripts/run_suites.py [suite ...] [--tolerance X]

With no arguments every suite runs, sorted by name. Exit status is 1 if
any suite fails its tolerance.
"""

import argparse
import sys
import time

from thetalift.verify import SUITE_NAMES, run_suite


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", metavar="suite",
                    help=f"suites to run (default: all of {', '.join(SUITE_NAMES)})")
    ap.add_argument("--tolerance", type=float, default=None,
                    help="override every suite's pass tolerance")
    args = ap.parse_args(argv)

    names = args.names or list(SUITE_NAMES)
    cfg = {} if args.tolerance is None else {"tolerance": args.tolerance}
    failures = 0
    for name in names:
        begin = time.monotonic()
        report = run_suite(name, dict(cfg))
        elapsed = time.monotonic() - begin
        print(f"{report.line()} CASES={report.cases} TIME={elapsed:.2f}s")
        failures += 0 if report.passed else 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
