#!/usr/bin/env python3
"""Run every sharpness-diagnostic sweep and write one CSV per family.

Usage: python3 scripts/run_sweeps.py [--outdir sweeps] [--size 64]
"""

import argparse
import os
import sys

from pvarlab import sharpness_sweep
from pvarlab.harness import sweep_rows_to_csv

FAMILIES = {
    "t1xt1": {"p_grid": (1.01, 1.1, 1.5, 2.0, 10.0, 50.0), "n_grid": (1,)},
    "tnxt1": {"p_grid": (1.5, 2.0, 4.0), "n_grid": (1, 2, 4)},
    "tnxtn": {"p_grid": (1.5, 2.0, 4.0), "n_grid": (1, 2, 4)},
    "trigpoly": {"p_grid": (1.0, 2.0, 4.0, 8.0), "n_grid": (1, 2, 3, 4)},
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="sweeps")
    ap.add_argument("--size", type=int, default=64)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    os.makedirs(args.outdir, exist_ok=True)
    size = args.size
    for family, kw in FAMILIES.items():
        rows = sharpness_sweep(family, kw["p_grid"], kw["n_grid"], size=size, seed=args.seed)
        path = os.path.join(args.outdir, f"{family}.csv")
        with open(path, "w") as fh:
            fh.write(sweep_rows_to_csv(rows))
        print(f"{family}: {len(rows)} rows -> {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
