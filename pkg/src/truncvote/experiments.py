"""Monte-Carlo harness: success rate, score-ratio, minimal-k search, and
real-data sweeps, with seeded deterministic parallel trials and CSV output.

Trial t always uses the stream ``trial_rng(base_seed, t)`` and results are
merged in trial order, so the worker count never changes the output.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import repeat
from pathlib import Path
from typing import Callable, Sequence

from .ballots import DomainError, Profile, TieBreak
from .bounds import Ratio, is_infinite, price_of_truncation
from .mallows import MallowsModel, sample_profile, trial_rng
from .preflib import ElectionDataset, effective_truncate, resample
from .rules import RuleId, apply_rule

SUCCESS_COLUMNS = ("rule", "k", "phi", "n", "trials", "seed", "rate")
RATIO_COLUMNS = ("rule", "k", "phi", "n", "trials", "seed", "mean_ratio", "max_ratio", "inf_count")
MIN_K_COLUMNS = ("rule", "phi", "n", "trials", "seed", "min_k")
REAL_SWEEP_COLUMNS = ("rule", "k", "n_star", "trials", "seed", "rate")


@dataclass(frozen=True)
class MallowsSource:
    m: int
    n: int
    phi: float
    sigma: tuple[int, ...] | None = None

    @property
    def model(self) -> MallowsModel:
        return MallowsModel(self.m, self.phi, self.sigma)


@dataclass(frozen=True)
class PreflibSource:
    dataset: ElectionDataset
    n_star: int
    with_replacement: bool = False

    @property
    def m(self) -> int:
        return self.dataset.m


@dataclass(frozen=True)
class FixedSource:
    """Replays one fixed profile in every trial (testing/cross-checks)."""

    profile: Profile

    @property
    def m(self) -> int:
        return self.profile.m


ProfileSource = MallowsSource | PreflibSource | FixedSource


@dataclass(frozen=True)
class ExperimentConfig:
    source: ProfileSource
    rules: tuple[RuleId, ...]
    k_values: tuple[int, ...]
    trials: int
    base_seed: int
    tiebreak: TieBreak | None = None

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise DomainError("trials must be >= 1")
        m = self.source.m
        if any(not 1 <= k <= m - 1 for k in self.k_values):
            raise DomainError(f"k values must lie in [1, {m - 1}]")
        object.__setattr__(self, "rules", tuple(r.at_k(None) for r in self.rules))

    @property
    def tb(self) -> TieBreak:
        return self.tiebreak or TieBreak.by_index(self.source.m)


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    rule: RuleId
    k: int
    true_winner: int
    topk_winner: int
    agree: bool
    ratio: Ratio | None = None


def _trial_winners(cfg: ExperimentConfig, t: int) -> tuple[Profile | None, dict, dict]:
    """Per-trial profile plus true winners and per-(rule, k) top-k winners."""
    src, tb = cfg.source, cfg.tb
    if isinstance(src, MallowsSource):
        profile = sample_profile(src.model, src.n, trial_rng(cfg.base_seed, t))
        true = {rule: apply_rule(rule, profile, tb) for rule in cfg.rules}
        approx = {
            (rule, k): apply_rule(rule.at_k(k), profile, tb)
            for k in cfg.k_values
            for rule in cfg.rules
        }
        return profile, true, approx
    if isinstance(src, FixedSource):
        profile = src.profile
        true = {rule: apply_rule(rule, profile, tb) for rule in cfg.rules}
        approx = {
            (rule, k): apply_rule(rule.at_k(k), profile, tb)
            for k in cfg.k_values
            for rule in cfg.rules
        }
        return profile, true, approx
    # real data: the dataset's own (possibly incomplete) ballots are ground
    # truth, evaluated through the top-(m-1) machinery
    m = src.m
    ballots = resample(src.dataset, src.n_star, trial_rng(cfg.base_seed, t), src.with_replacement)
    reference = effective_truncate(ballots, m - 1, m)
    true = {rule: apply_rule(rule.at_k(reference.k), reference, tb) for rule in cfg.rules}
    approx = {}
    for k in cfg.k_values:
        topk = effective_truncate(ballots, k, m)
        for rule in cfg.rules:
            approx[(rule, k)] = apply_rule(rule.at_k(topk.k), topk, tb)
    return None, true, approx


def _success_trial(cfg: ExperimentConfig, t: int) -> tuple[bool, ...]:
    _, true, approx = _trial_winners(cfg, t)
    return tuple(
        approx[(rule, k)] == true[rule] for rule in cfg.rules for k in cfg.k_values
    )


def _ratio_trial(cfg: ExperimentConfig, t: int) -> tuple[Ratio, ...]:
    src = cfg.source
    if isinstance(src, MallowsSource):
        profile = sample_profile(src.model, src.n, trial_rng(cfg.base_seed, t))
    elif isinstance(src, FixedSource):
        profile = src.profile
    else:
        raise DomainError("score-ratio experiments need complete profiles")
    return tuple(
        price_of_truncation(profile, rule, k, cfg.tb)
        for rule in cfg.rules
        for k in cfg.k_values
    )


def _map_trials(fn: Callable, cfg: ExperimentConfig, workers: int) -> list:
    if workers <= 1:
        return [fn(cfg, t) for t in range(cfg.trials)]
    chunk = max(1, cfg.trials // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, repeat(cfg), range(cfg.trials), chunksize=chunk))


def _source_fields(source: ProfileSource) -> tuple[str, str]:
    if isinstance(source, MallowsSource):
        return f"{source.phi:g}", str(source.n)
    if isinstance(source, FixedSource):
        return "", str(source.profile.n)
    return "", str(source.n_star)


def run_success_rate(cfg: ExperimentConfig, workers: int = 1) -> list[dict]:
    """Winner-agreement rate per (rule, k); rows ready for CSV."""
    results = _map_trials(_success_trial, cfg, workers)
    phi, n = _source_fields(cfg.source)
    rows = []
    for i, rule in enumerate(cfg.rules):
        for j, k in enumerate(cfg.k_values):
            hits = sum(res[i * len(cfg.k_values) + j] for res in results)
            rows.append(
                {
                    "rule": rule.label,
                    "k": str(k),
                    "phi": phi,
                    "n": n,
                    "trials": str(cfg.trials),
                    "seed": str(cfg.base_seed),
                    "rate": f"{hits / cfg.trials:.4f}",
                }
            )
    return rows


def run_ratio(cfg: ExperimentConfig, workers: int = 1) -> list[dict]:
    """Per-(rule, k) mean and max score ratio; infinities counted, not averaged."""
    for rule in cfg.rules:
        if rule.family in ("rp", "stv"):
            raise DomainError(f"{rule.family} is not score-based; no ratio experiment")
    results = _map_trials(_ratio_trial, cfg, workers)
    phi, n = _source_fields(cfg.source)
    rows = []
    for i, rule in enumerate(cfg.rules):
        for j, k in enumerate(cfg.k_values):
            ratios = [res[i * len(cfg.k_values) + j] for res in results]
            finite = [r for r in ratios if not is_infinite(r)]
            inf_count = len(ratios) - len(finite)
            mean = float(sum(finite, Fraction(0)) / len(finite)) if finite else float("nan")
            peak = float(max(finite)) if finite else float("nan")
            rows.append(
                {
                    "rule": rule.label,
                    "k": str(k),
                    "phi": phi,
                    "n": n,
                    "trials": str(cfg.trials),
                    "seed": str(cfg.base_seed),
                    "mean_ratio": f"{mean:.6f}",
                    "max_ratio": f"{peak:.6f}",
                    "inf_count": str(inf_count),
                }
            )
    return rows


def min_k_search(cfg: ExperimentConfig, workers: int = 1) -> list[dict]:
    """Smallest k whose top-k winner agrees with the true winner in every
    trial; m-1 if no smaller k qualifies. k_values must span 1..m-1."""
    m = cfg.source.m
    if tuple(sorted(cfg.k_values)) != tuple(range(1, m)):
        raise DomainError("min-k search needs k_values spanning 1..m-1")
    results = _map_trials(_success_trial, cfg, workers)
    phi, n = _source_fields(cfg.source)
    rows = []
    for i, rule in enumerate(cfg.rules):
        min_k = m - 1
        for j, k in enumerate(sorted(cfg.k_values)):
            jj = cfg.k_values.index(k)
            if all(res[i * len(cfg.k_values) + jj] for res in results):
                min_k = k
                break
        rows.append(
            {
                "rule": rule.label,
                "phi": phi,
                "n": n,
                "trials": str(cfg.trials),
                "seed": str(cfg.base_seed),
                "min_k": str(min_k),
            }
        )
    return rows


def sweep_real_data(
    ds: ElectionDataset,
    n_star_grid: Sequence[int],
    k_grid: Sequence[int],
    rules: Sequence[RuleId],
    trials: int,
    seed: int,
    tiebreak: TieBreak | None = None,
    workers: int = 1,
    with_replacement: bool = False,
) -> list[dict]:
    """Success rate over resampled sub-elections for each (n*, rule, k)."""
    if max(n_star_grid) > ds.n:
        raise DomainError(f"n_star grid exceeds dataset size {ds.n}")
    rows = []
    for n_star in n_star_grid:
        cfg = ExperimentConfig(
            PreflibSource(ds, n_star, with_replacement),
            tuple(rules),
            tuple(k_grid),
            trials,
            seed,
            tiebreak,
        )
        for row in run_success_rate(cfg, workers):
            rows.append(
                {
                    "rule": row["rule"],
                    "k": row["k"],
                    "n_star": str(n_star),
                    "trials": row["trials"],
                    "seed": row["seed"],
                    "rate": row["rate"],
                }
            )
    return rows


def write_csv(rows: Sequence[dict], destination, columns: Sequence[str] | None = None) -> None:
    """UTF-8, LF-terminated, RFC-4180-style CSV; header always written.

    The full text is rendered before any I/O, so a failure never leaves a
    partial file behind.
    """
    if columns is None:
        if not rows:
            raise DomainError("empty row set needs explicit columns")
        columns = list(rows[0].keys())
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([row[c] for c in columns])
    text = buf.getvalue()
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text, encoding="utf-8")
