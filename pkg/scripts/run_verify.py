#!/usr/bin/env python3
"""Run the full inequality suite and write the JSON report.

Usage: python3 scripts/run_verify.py [--seed 7] [--out report.json]
"""

import argparse
import sys

from pvarlab import SuiteConfig, run_suite, save_report_json


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--out", default="report.json")
    args = ap.parse_args()

    report = run_suite(SuiteConfig(seed=args.seed))
    save_report_json(report, args.out)
    n_fail = sum(not c["pass"] for c in report.checks)
    print(f"{len(report.checks)} checks, {n_fail} failed -> {args.out}")
    return 0 if report.all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
