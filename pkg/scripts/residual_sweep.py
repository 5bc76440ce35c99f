#!/usr/bin/env python3
"""Margin study for the identity-residual sweep.

Runs every registered identity at increasing sample counts and prints how
the worst residual grows toward its tolerance, which is how the default
tolerances in diracspin.verify were chosen in the first place.

    python3 scripts/residual_sweep.py --seed 7 --samples 200 800
"""
import argparse

import numpy as np

from diracspin.verify import IDENTITY_RUNNERS, RunConfig, run_identity


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--samples", type=int, nargs="+", default=[100, 400, 1600])
    ap.add_argument("--vmax", type=float, default=0.99)
    ap.add_argument("--pmax", type=float, default=10.0)
    args = ap.parse_args()

    counts = sorted(args.samples)
    header = "identity".ljust(32) + "".join(f"n={n}".rjust(12) for n in counts) + "  tol/worst"
    print(header)
    print("-" * len(header))
    for name in IDENTITY_RUNNERS:
        residuals = []
        for n in counts:
            cfg = RunConfig(seed=args.seed, samples=n, vmax=args.vmax, pmax_over_m=args.pmax)
            residuals.append(run_identity(name, cfg).max_residual)
        tol = run_identity(name, RunConfig(seed=args.seed, samples=1)).tolerance
        margin = tol / residuals[-1] if residuals[-1] > 0 else np.inf
        cells = "".join(f"{r:12.2e}" for r in residuals)
        print(f"{name.ljust(32)}{cells}  {margin:9.1f}x")


if __name__ == "__main__":
    main()
