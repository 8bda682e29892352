#!/usr/bin/env python3
"""Score-ratio statistics (mean, max, infinite count) on Mallows profiles.

Order-based rules (ranked pairs, STV) have no score and are excluded.

Example:
    python3 scripts/run_ratio_mallows.py --m 7 --n 500 --phi 0.8 \
        --trials 1000 --seed 1 --out ratios.csv
"""

import argparse

from truncvote import ExperimentConfig, MallowsSource, parse_rule, run_ratio, write_csv
from truncvote.experiments import RATIO_COLUMNS

RULES = ("borda:zero", "borda:avg", "harmonic:avg", "copeland", "maximin")


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
    rows = run_ratio(cfg, args.workers)
    write_csv(rows, args.out, RATIO_COLUMNS)
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
