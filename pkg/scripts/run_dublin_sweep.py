#!/usr/bin/env python3
"""Success-rate sweep over resampled sub-elections of a real data file.

The ground truth per trial is each rule applied to the resampled voters'
own (possibly incomplete) ballots; the approximation truncates them to k.

Example:
    python3 scripts/run_dublin_sweep.py --data data/dublin-north-2002.soi \
        --n-star 50,100,500,1000 --trials 1000 --seed 1 --out dublin.csv
"""

import argparse

from truncvote import load, parse_rule, sweep_real_data, write_csv
from truncvote.experiments import REAL_SWEEP_COLUMNS

RULES = ("borda:zero", "borda:avg", "harmonic:avg", "copeland", "maximin", "rp", "stv")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--data", required=True, help="PrefLib SOC/SOI file")
    ap.add_argument("--n-star", dest="n_star", required=True, help="comma list")
    ap.add_argument("--k", default=None, help="comma list; defaults to 1..m-1")
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    ds = load(args.data)
    k_grid = (
        tuple(int(p) for p in args.k.split(",")) if args.k else tuple(range(1, ds.m))
    )
    rows = sweep_real_data(
        ds,
        tuple(int(p) for p in args.n_star.split(",")),
        k_grid,
        tuple(parse_rule(r) for r in RULES),
        args.trials,
        args.seed,
        workers=args.workers,
    )
    write_csv(rows, args.out, REAL_SWEEP_COLUMNS)
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
