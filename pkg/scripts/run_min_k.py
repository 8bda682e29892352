#!/usr/bin/env python3
"""Smallest k giving perfect winner agreement across trials, per rule.

Example:
    python3 scripts/run_min_k.py --m 7 --n 2000 --phi 0.7 --trials 1000 \
        --seed 1 --out min_k.csv
"""

import argparse

from truncvote import ExperimentConfig, MallowsSource, min_k_search, parse_rule, write_csv
from truncvote.experiments import MIN_K_COLUMNS

RULES = ("borda:zero", "borda:avg", "harmonic:avg", "copeland", "maximin", "rp", "stv")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=7)
    ap.add_argument("--n", type=int, required=True)
    ap.add_argument("--phi", type=float, required=True)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    cfg = ExperimentConfig(
        MallowsSource(args.m, args.n, args.phi),
        tuple(parse_rule(r) for r in RULES),
        tuple(range(1, args.m)),
        args.trials,
        args.seed,
    )
    rows = min_k_search(cfg, args.workers)
    write_csv(rows, args.out, MIN_K_COLUMNS)
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
