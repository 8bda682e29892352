"""Command-line interface.

Subcommands: winner, truncate, sample, bounds, adversarial, parse-check, and
experiment {success, ratio, min-k, real-sweep}. Profiles on disk always use
the classic PrefLib layout, synthetic ones included. Every randomized
command requires an explicit --seed. CSV goes to stdout or --out; exit code
2 for usage/parse/file errors, 1 for domain errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import bounds as bounds_mod
from . import experiments as exp
from .ballots import DomainError, Profile, TieBreak
from .bounds import (
    ConstructionInapplicableError,
    UnsupportedRuleError,
    copeland_adversarial,
    is_infinite,
    maximin_adversarial,
    maximin_bounds,
    price_of_truncation,
    psr_adversarial,
    psr_bounds,
)
from .mallows import MallowsModel, make_rng, sample_profile
from .preflib import (
    ElectionDataset,
    PreflibParseError,
    effective_truncate,
    load,
    serialize_classic,
)
from .rules import RuleId, RuleParseError, apply_rule, completion_score, parse_rule, scoring_vector


def _parse_int_list(text: str) -> list[int]:
    """Comma list '1,2,3' or inclusive range 'start:stop[:step]'."""
    if ":" in text:
        parts = [int(p) for p in text.split(":")]
        start, stop = parts[0], parts[1]
        step = parts[2] if len(parts) > 2 else 1
        return list(range(start, stop + 1, step))
    return [int(p) for p in text.split(",") if p.strip()]


def _parse_tiebreak(text: str | None, m: int) -> TieBreak:
    if text is None:
        return TieBreak.by_index(m)
    return TieBreak(tuple(int(p) for p in text.split(",")))


def _parse_rules(texts: list[str]) -> tuple[RuleId, ...]:
    rules = []
    for text in texts:
        for piece in text.split(","):
            if piece.strip():
                rules.append(parse_rule(piece))
    if not rules:
        raise RuleParseError("no rules given")
    return tuple(rules)


def _profile_from_dataset(ds: ElectionDataset) -> Profile | None:
    if all(len(order) == ds.m for order, _ in ds.ballots):
        return Profile.from_ballots(ds.m, ds.ballots)
    return None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_rows(rows: list[dict], columns, out: str | None) -> None:
    if out is None:
        exp.write_csv(rows, sys.stdout, columns)
    else:
        exp.write_csv(rows, out, columns)


def _cmd_winner(args) -> int:
    ds = load(args.profile)
    rule = parse_rule(args.rule)
    tb = _parse_tiebreak(args.tiebreak, ds.m)
    if rule.k is not None:
        winner = apply_rule(rule.at_k(min(rule.k, ds.m - 1)),
                            effective_truncate(ds.ballots, rule.k, ds.m), tb)
    else:
        complete = _profile_from_dataset(ds)
        if complete is not None:
            winner = apply_rule(rule, complete, tb)
        else:
            # incomplete real data: the ballots themselves are ground truth
            topk = effective_truncate(ds.ballots, ds.m - 1, ds.m)
            winner = apply_rule(rule.at_k(topk.k), topk, tb)
    print(ds.candidate_names[winner])
    return 0


def _cmd_truncate(args) -> int:
    ds = load(args.profile)
    truncated = [(order[: min(args.k, len(order))], count) for order, count in ds.ballots]
    if args.k < 1:
        raise DomainError(f"k must be >= 1, got {args.k}")
    _emit(
        serialize_classic(ElectionDataset.from_ballots(ds.m, ds.candidate_names, truncated)),
        args.out,
    )
    return 0


def _cmd_sample(args) -> int:
    model = MallowsModel(args.m, args.phi)
    profile = sample_profile(model, args.n, make_rng(args.seed))
    names = [f"c{i + 1}" for i in range(args.m)]
    ds = ElectionDataset.from_ballots(args.m, names, profile.entries)
    _emit(serialize_classic(ds), args.out)
    return 0


def _fmt_ratio(value) -> str:
    return "inf" if is_infinite(value) else str(Fraction(value))


def _bounds_for(rule: RuleId, m: int, k: int) -> bounds_mod.RatioBound:
    if rule.family == "psr":
        vector = scoring_vector(rule, m)
        return psr_bounds(vector, k, completion_score(vector, k, rule.policy))
    if rule.family == "maximin":
        return maximin_bounds(m, k)
    if rule.family == "copeland":
        return bounds_mod.RatioBound(bounds_mod.INFINITY, bounds_mod.INFINITY)
    raise UnsupportedRuleError(f"no score-ratio bounds for {rule.family}")


def _adversarial_for(rule: RuleId, m: int, k: int) -> bounds_mod.AdversarialInstance:
    if rule.family == "psr":
        vector = scoring_vector(rule, m)
        return psr_adversarial(vector, k, completion_score(vector, k, rule.policy))
    if rule.family == "maximin":
        return maximin_adversarial(m, k)
    if rule.family == "copeland":
        return copeland_adversarial(m, k)
    raise UnsupportedRuleError(f"no adversarial construction for {rule.family}")


def _cmd_bounds(args) -> int:
    rule = parse_rule(args.rule)
    if args.csv:
        rows = []
        for m in _parse_int_list(args.m):
            for k in _parse_int_list(args.k):
                bound = _bounds_for(rule, m, k)
                row = {
                    "rule": rule.label,
                    "m": str(m),
                    "k": str(k),
                    "lower": _fmt_ratio(bound.lower),
                    "upper": _fmt_ratio(bound.upper),
                    "attained": "",
                }
                if args.attained:
                    inst = _adversarial_for(rule, m, k)
                    row["attained"] = _fmt_ratio(
                        price_of_truncation(inst.profile, rule.at_k(None), k)
                    )
                rows.append(row)
        _write_rows(rows, ("rule", "m", "k", "lower", "upper", "attained"), args.out)
        return 0
    (m,), (k,) = _parse_int_list(args.m), _parse_int_list(args.k)
    bound = _bounds_for(rule, m, k)
    print(f"lower={_fmt_ratio(bound.lower)} upper={_fmt_ratio(bound.upper)}")
    return 0


def _cmd_adversarial(args) -> int:
    rule = parse_rule(args.rule)
    inst = _adversarial_for(rule, args.m, args.k)
    print(f"x1={inst.x1} x2={inst.x2} k={inst.k} ratio={_fmt_ratio(inst.claimed_ratio)}")
    if args.out:
        names = [f"x{i + 1}" for i in range(args.m)]
        ds = ElectionDataset.from_ballots(args.m, names, inst.profile.entries)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(serialize_classic(ds))
    return 0


def _cmd_parse_check(args) -> int:
    ds = load(args.path)
    print(f"m={ds.m} n={ds.n} unique_ballots={len(ds.ballots)}")
    return 0


def _mallows_config(args) -> exp.ExperimentConfig:
    source = exp.MallowsSource(args.m, args.n, args.phi)
    return exp.ExperimentConfig(
        source,
        _parse_rules(args.rule),
        tuple(_parse_int_list(args.k)),
        args.trials,
        args.seed,
        _parse_tiebreak(args.tiebreak, args.m),
    )


def _cmd_experiment(args) -> int:
    if args.mode == "success":
        rows = exp.run_success_rate(_mallows_config(args), args.workers)
        _write_rows(rows, exp.SUCCESS_COLUMNS, args.out)
    elif args.mode == "ratio":
        rows = exp.run_ratio(_mallows_config(args), args.workers)
        _write_rows(rows, exp.RATIO_COLUMNS, args.out)
    elif args.mode == "min-k":
        args.k = args.k or f"1:{args.m - 1}"
        rows = exp.min_k_search(_mallows_config(args), args.workers)
        _write_rows(rows, exp.MIN_K_COLUMNS, args.out)
    else:  # real-sweep
        ds = load(args.data)
        rows = exp.sweep_real_data(
            ds,
            _parse_int_list(args.n_star),
            _parse_int_list(args.k),
            _parse_rules(args.rule),
            args.trials,
            args.seed,
            _parse_tiebreak(args.tiebreak, ds.m),
            args.workers,
        )
        _write_rows(rows, exp.REAL_SWEEP_COLUMNS, args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="truncvote",
        description="Voting rules on top-k truncated ballots: winners, bounds, experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("winner", help="compute the winner of a rule on a profile file")
    p.add_argument("--rule", required=True, help="rule string, e.g. copeland@k=2")
    p.add_argument("--profile", required=True, help="profile file (classic PrefLib layout)")
    p.add_argument("--tiebreak", help="priority as 0-based indices, e.g. 3,0,1,2")
    p.set_defaults(func=_cmd_winner)

    p = sub.add_parser("truncate", help="truncate a profile file to top-k prefixes")
    p.add_argument("--profile", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_truncate)

    p = sub.add_parser("sample", help="sample a Mallows profile to a classic-layout file")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("bounds", help="print worst-case truncation-ratio bounds")
    p.add_argument("--rule", required=True, help="e.g. borda:zero, harmonic:avg, maximin")
    p.add_argument("--m", required=True, help="single value, comma list, or a:b[:c] range")
    p.add_argument("--k", required=True, help="single value, comma list, or a:b[:c] range")
    p.add_argument("--csv", action="store_true", help="emit a CSV table")
    p.add_argument("--attained", action="store_true", help="include the adversarial ratio")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("adversarial", help="build a worst-case profile and report its ratio")
    p.add_argument("--rule", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", help="write the profile in classic layout")
    p.set_defaults(func=_cmd_adversarial)

    p = sub.add_parser("parse-check", help="parse a PrefLib file and print a summary")
    p.add_argument("path")
    p.set_defaults(func=_cmd_parse_check)

    p = sub.add_parser("experiment", help="run a Monte-Carlo experiment, output CSV")
    mode = p.add_subparsers(dest="mode", required=True)

    def common(q, mallows: bool) -> None:
        q.add_argument("--rule", action="append", required=True,
                       help="rule string; repeat or comma-separate")
        q.add_argument("--trials", type=int, required=True)
        q.add_argument("--seed", type=int, required=True)
        q.add_argument("--workers", type=int, default=1)
        q.add_argument("--tiebreak")
        q.add_argument("--out")
        if mallows:
            q.add_argument("--model", choices=["mallows"], default="mallows")
            q.add_argument("--m", type=int, required=True)
            q.add_argument("--n", type=int, required=True)
            q.add_argument("--phi", type=float, required=True)

    q = mode.add_parser("success", help="winner-agreement rate on Mallows profiles")
    q.add_argument("--k", required=True)
    common(q, mallows=True)
    q.set_defaults(func=_cmd_experiment)

    q = mode.add_parser("ratio", help="score-ratio statistics on Mallows profiles")
    q.add_argument("--k", required=True)
    common(q, mallows=True)
    q.set_defaults(func=_cmd_experiment)

    q = mode.add_parser("min-k", help="minimal k with perfect agreement across trials")
    q.add_argument("--k", help="defaults to 1:m-1")
    common(q, mallows=True)
    q.set_defaults(func=_cmd_experiment)

    q = mode.add_parser("real-sweep", help="success-rate sweep over resampled real data")
    q.add_argument("--data", required=True, help="PrefLib SOC/SOI file")
    q.add_argument("--n-star", required=True, dest="n_star",
                   help="grid: comma list or a:b[:c] range")
    q.add_argument("--k", required=True)
    common(q, mallows=False)
    q.set_defaults(func=_cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RuleParseError, PreflibParseError, FileNotFoundError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (DomainError, UnsupportedRuleError, ConstructionInapplicableError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
