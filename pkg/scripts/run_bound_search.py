#!/usr/bin/env python3
"""Random search for per-profile ratios exceeding the closed-form bounds.

Samples Mallows/Impartial-Culture profiles and checks that the observed
score ratio never exceeds the stated upper bound. Exits non-zero and prints
the offending profile if a violation is ever found (none is expected).

Example:
    python3 scripts/run_bound_search.py --profiles 100000 --seed 1
"""

import argparse
import sys
from fractions import Fraction

import numpy as np

from truncvote import (
    is_infinite,
    maximin_bounds,
    parse_rule,
    price_of_truncation,
    psr_bounds,
    sample_profile,
)
from truncvote.mallows import MallowsModel
from truncvote.rules import scoring_vector


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--profiles", type=int, default=100_000)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--max-m", type=int, default=7)
    ap.add_argument("--max-n", type=int, default=51)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    rules = [parse_rule("borda:zero"), parse_rule("harmonic:zero"), parse_rule("maximin")]
    checked = 0
    for i in range(args.profiles):
        m = int(rng.integers(3, args.max_m + 1))
        n = int(rng.integers(1, args.max_n + 1))
        phi = float(rng.choice([0.5, 0.8, 1.0]))
        profile = sample_profile(MallowsModel(m, phi), n, rng)
        k = int(rng.integers(1, m))
        for rule in rules:
            if rule.family == "psr":
                bound = psr_bounds(scoring_vector(rule, m), k, Fraction(0)).upper
            else:
                bound = maximin_bounds(m, k).upper
            ratio = price_of_truncation(profile, rule, k)
            checked += 1
            if not is_infinite(ratio) and ratio > bound:
                print(f"VIOLATION at profile {i}: rule={rule} m={m} k={k} "
                      f"ratio={ratio} bound={bound}")
                print(profile)
                return 1
        if (i + 1) % 10_000 == 0:
            print(f"{i + 1} profiles, {checked} checks, no violations")
    print(f"done: {checked} checks over {args.profiles} profiles, no violations")
    return 0


if __name__ == "__main__":
    sys.exit(main())
