"""Monte Carlo estimates of the earliest and latest full-knowledge rounds.

A trial draws fresh uniform Hamiltonian cycles round after round (the same
draws :func:`floodnet.graph.random_sequence` makes from
``default_rng(seed)``) and floods until every node holds every datum.
Because each round is connected the trial always ends by round ``n - 1``.

Trial seeds for a sweep come from ``SeedSequence([base_seed, n, index])``,
so any trial can be rerun alone and results do not depend on execution
order or worker count.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

import numpy as np

from . import _kernels
from .bounds import earliest_window, latest_window, phi
from .errors import InvalidSizeError


@dataclass(frozen=True)
class TrialRecord:
    n: int
    seed: int
    earliest_fks: int
    latest_fks: int


def trial_seed(base_seed: int, n: int, index: int) -> int:
    """Seed of trial ``index`` at size ``n`` within a sweep."""
    seq = np.random.SeedSequence([int(base_seed), int(n), int(index)])
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def draw_permutations(n: int, steps: int, rng: np.random.Generator) -> np.ndarray:
    """``(steps, n)`` array of 0-based permutations, one draw per round."""
    perms = np.empty((steps, n), dtype=np.int64)
    for k in range(steps):
        perms[k] = rng.permutation(n)
    return perms


def run_trial(n: int, seed: int, kernels=None) -> TrialRecord:
    if n < 2:
        raise InvalidSizeError(f"trials need n >= 2, got {n}")
    kernels = _kernels.active if kernels is None else kernels
    perms = draw_permutations(n, n - 1, np.random.default_rng(seed))
    earliest, latest = kernels.cycle_trial(perms, _kernels.full_mask(n))
    if latest < 0:  # cannot happen for connected rounds
        raise RuntimeError(f"trial n={n} seed={seed} did not reach full knowledge by round {n - 1}")
    return TrialRecord(n, int(seed), int(earliest), int(latest))


def _int_stats(values: Sequence[int]) -> tuple[float, float]:
    # integer sums keep mean/std independent of trial order
    t = len(values)
    s1 = sum(values)
    s2 = sum(v * v for v in values)
    mean = s1 / t
    if t < 2:
        return mean, 0.0
    var = (s2 * t - s1 * s1) / (t * (t - 1))
    return mean, math.sqrt(max(var, 0.0))


@dataclass(frozen=True)
class SizeStats:
    n: int
    trials: int
    mean_earliest: float
    mean_latest: float
    std_earliest: float
    std_latest: float
    min_earliest: int
    max_earliest: int
    min_latest: int
    max_latest: int
    phi: float | None
    latest_window: tuple[float, float] | None
    earliest_window: tuple[float, float] | None

    @classmethod
    def from_records(cls, n: int, records: Sequence[TrialRecord]) -> "SizeStats":
        early = [r.earliest_fks for r in records]
        late = [r.latest_fks for r in records]
        me, se = _int_stats(early)
        ml, sl = _int_stats(late)
        if n >= 3:
            f, lw, ew = phi(n), latest_window(n), earliest_window(n)
        else:
            f, lw, ew = None, None, None
        return cls(n, len(records), me, ml, se, sl, min(early), max(early),
                   min(late), max(late), f, lw, ew)

    def latest_within(self, slack: float = 1.0) -> bool:
        lo, hi = self.latest_window
        return lo - slack <= self.mean_latest <= hi + slack

    def earliest_within(self, slack: float = 1.0) -> bool:
        lo, hi = self.earliest_window
        return lo - slack <= self.mean_earliest <= hi + slack


SWEEP_COLUMNS = ("n", "trials", "mean_earliest", "mean_latest", "std_earliest",
                 "std_latest", "min_latest", "max_latest", "phi", "latest_low",
                 "latest_high", "earliest_low", "earliest_high")


@dataclass(frozen=True)
class SweepReport:
    n_values: tuple[int, ...]
    trials: int
    base_seed: int
    stats: tuple[SizeStats, ...] = field(default_factory=tuple)

    def by_n(self) -> dict[int, SizeStats]:
        return {s.n: s for s in self.stats}

    def rows(self) -> list[dict]:
        out = []
        for s in self.stats:
            blank = s.phi is None
            out.append({
                "n": s.n, "trials": s.trials,
                "mean_earliest": s.mean_earliest, "mean_latest": s.mean_latest,
                "std_earliest": s.std_earliest, "std_latest": s.std_latest,
                "min_latest": s.min_latest, "max_latest": s.max_latest,
                "phi": "" if blank else s.phi,
                "latest_low": "" if blank else s.latest_window[0],
                "latest_high": "" if blank else s.latest_window[1],
                "earliest_low": "" if blank else s.earliest_window[0],
                "earliest_high": "" if blank else s.earliest_window[1],
            })
        return out

    def to_csv(self, out: IO[str] | None = None) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
        w.writeheader()
        for row in self.rows():
            w.writerow({k: _fmt(v) for k, v in row.items()})
        text = buf.getvalue()
        if out is not None:
            out.write(text)
        return text


def _fmt(v):
    return repr(v) if isinstance(v, float) else v


def _trials_for(args: tuple[int, int, int]) -> list[TrialRecord]:
    n, trials, base_seed = args
    return [run_trial(n, trial_seed(base_seed, n, t)) for t in range(trials)]


def sweep(n_values: Iterable[int], trials: int, base_seed: int = 0,
          workers: int | None = None) -> SweepReport:
    """Run ``trials`` independent trials for every ``n`` and aggregate them.

    ``workers > 1`` spreads sizes over a process pool; the report is the
    same as the serial one.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    ns = tuple(int(n) for n in n_values)
    for n in ns:
        if n < 2:
            raise InvalidSizeError(f"trials need n >= 2, got {n}")
    jobs = [(n, trials, base_seed) for n in ns]
    if workers is not None and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_trials_for, jobs))
    else:
        results = [_trials_for(j) for j in jobs]
    stats = tuple(SizeStats.from_records(n, recs) for n, recs in zip(ns, results))
    return SweepReport(ns, trials, base_seed, stats)
