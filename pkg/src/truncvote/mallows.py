"""Mallows phi-model over rankings, with an exact repeated-insertion sampler.

The probability of a ranking r is phi**d(r, sigma) / Z, where d is the
Kendall tau distance and Z the usual product normalization; phi = 1 is
Impartial Culture. Sampling uses repeated insertion (exact, O(m^2) per
draw), driven by numpy's PCG64 generator so that a given seed reproduces
the same profiles on every platform. Per-trial sub-streams are derived as
``default_rng([base_seed, trial_index])``.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .ballots import Ballot, DomainError, Profile, _validate_permutation


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def trial_rng(base_seed: int, trial_index: int) -> np.random.Generator:
    """Independent per-trial stream; parallelism cannot change results."""
    return np.random.default_rng([base_seed, trial_index])


@dataclass(frozen=True)
class MallowsModel:
    m: int
    phi: float
    sigma: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.sigma is None:
            object.__setattr__(self, "sigma", tuple(range(self.m)))
        _validate_permutation(self.sigma, self.m)
        if not 0 < self.phi <= 1:
            raise DomainError(f"phi must be in (0, 1], got {self.phi}")


def kendall_tau(r1: Sequence[int], r2: Sequence[int]) -> int:
    """Number of discordant pairs between two rankings."""
    m = len(r1)
    _validate_permutation(r1, m)
    _validate_permutation(r2, m)
    pos = {c: i for i, c in enumerate(r2)}
    seq = [pos[c] for c in r1]
    return sum(1 for i in range(m) for j in range(i + 1, m) if seq[i] > seq[j])


def normalization(m: int, phi):
    """Z = prod_{j=1..m} (1 + phi + ... + phi^(j-1)).

    Exact when phi is a Fraction, float otherwise.
    """
    if m < 1 or phi <= 0:
        raise DomainError("normalization needs m >= 1 and phi > 0")
    z = phi ** 0
    for j in range(1, m + 1):
        z *= sum(phi ** i for i in range(j))
    return z


def pmf(model: MallowsModel, r: Sequence[int], phi=None):
    """Probability mass of ranking r; pass an exact `phi` to get a Fraction."""
    p = model.phi if phi is None else phi
    return p ** kendall_tau(r, model.sigma) / normalization(model.m, p)


@lru_cache(maxsize=64)
def _insertion_cdfs(m: int, phi: float) -> tuple[tuple[float, ...], ...]:
    """Normalized cumulative insertion weights for steps j = 2..m.

    At step j, inserting sigma_j at (top-based) position i leaves j - i of
    the better candidates below it, so the weight is phi**(j - i).
    """
    cdfs = []
    for j in range(2, m + 1):
        weights = [phi ** (j - i) for i in range(1, j + 1)]
        total = sum(weights)
        acc, cum = 0.0, []
        for w in weights:
            acc += w / total
            cum.append(acc)
        cum[-1] = 1.0
        cdfs.append(tuple(cum))
    return tuple(cdfs)


def _insert_from_uniforms(model: MallowsModel, uniforms: Sequence[float]) -> Ballot:
    cdfs = _insertion_cdfs(model.m, float(model.phi))
    out = [model.sigma[0]]
    for step, u in enumerate(uniforms):
        out.insert(bisect_right(cdfs[step], u), model.sigma[step + 1])
    return tuple(out)


def sample(model: MallowsModel, rng: np.random.Generator) -> Ballot:
    """One exact draw from the Mallows distribution."""
    return _insert_from_uniforms(model, rng.random(model.m - 1))


def sample_profile(model: MallowsModel, n: int, rng: np.random.Generator) -> Profile:
    """n i.i.d. draws aggregated into a weighted profile."""
    if n < 1:
        raise DomainError("n must be >= 1")
    uniforms = rng.random((n, model.m - 1))
    counter = Counter(_insert_from_uniforms(model, row) for row in uniforms)
    return Profile.from_ballots(model.m, counter.items())
