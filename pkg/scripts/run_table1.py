#!/usr/bin/env python3
"""Full success-rate sweep over Mallows profiles.

Sweeps every rule over the (phi, n) grid and writes one CSV. The desk-scale
version of this (three cells, 1000 trials) runs in the test suite; this
script is for the full grid.

Example:
    python3 scripts/run_table1.py --m 7 --trials 1000 --seed 1 \
        --out table1.csv --workers 8
"""

import argparse

from truncvote import ExperimentConfig, MallowsSource, parse_rule, run_success_rate, write_csv
from truncvote.experiments import SUCCESS_COLUMNS

RULES = ("borda:zero", "borda:avg", "harmonic:avg", "copeland", "maximin", "rp", "stv")
PHI_GRID = (0.5, 0.7, 0.9, 1.0)
N_GRID = (100, 500, 2000)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=7)
    ap.add_argument("--k", default=None, help="comma list; defaults to 1..m-1")
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    k_values = (
        tuple(int(p) for p in args.k.split(",")) if args.k else tuple(range(1, args.m))
    )
    rules = tuple(parse_rule(r) for r in RULES)
    rows = []
    for phi in PHI_GRID:
        for n in N_GRID:
            cfg = ExperimentConfig(
                MallowsSource(args.m, n, phi), rules, k_values, args.trials, args.seed
            )
            rows.extend(run_success_rate(cfg, args.workers))
    write_csv(rows, args.out, SUCCESS_COLUMNS)
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
