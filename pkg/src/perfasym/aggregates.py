"""Scalar aggregates and distributional summaries over HNS values."""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from ._validation import check_covers, check_finite_scalar, check_values
from .exceptions import UnknownMethodError, ValidationError
from .partition import PartitionMap


def mean(values) -> float:
    return float(np.mean(check_values(values)))


def median(values) -> float:
    return float(np.median(check_values(values)))


def iqm(values) -> float:
    """Interquartile mean: drop the lowest and highest ``floor(n/4)`` values, average the rest."""
    arr = np.sort(check_values(values))
    k = arr.size // 4
    return float(np.mean(arr[k: arr.size - k]))


def optimality_gap(values) -> float:
    """Mean of ``1 - clip(v, 0, 1)``; progress beyond HNS 1 is invisible to it."""
    arr = check_values(values)
    return float(np.mean(1.0 - np.clip(arr, 0.0, 1.0)))


def std_dev(values, ddof: int = 0) -> float:
    """Standard deviation; population (divisor n) by default."""
    arr = check_values(values, min_size=2)
    return float(np.std(arr, ddof=ddof))


def harmonic_mean(a: float, b: float) -> float:
    a = check_finite_scalar(a, "a")
    b = check_finite_scalar(b, "b")
    if a <= 0 or b <= 0:
        # one zero collapses the mean to 0 and negatives make it meaningless
        raise ValidationError(f"harmonic mean needs positive inputs, got ({a!r}, {b!r})")
    return 2.0 * a * b / (a + b)


def subset_means(hns_by_game: Mapping[str, float], partition: PartitionMap) -> Dict[str, float]:
    """Arithmetic mean HNS of the Agent-Optimal and Human-Optimal subsets."""
    check_covers(hns_by_game, partition.labels, "HNS")
    out = {}
    for label, games in partition.groups().items():
        if not games:
            raise ValidationError(f"partition has no {label.value} games")
        out[label.value] = math.fsum(hns_by_game[g] for g in games) / len(games)
    return out


def sym_hns(hns_by_game: Mapping[str, float], partition: PartitionMap) -> float:
    """Harmonic mean of the two subset means."""
    means = subset_means(hns_by_game, partition)
    if means["AO"] <= 0 or means["HO"] <= 0:
        raise ValidationError(f"Sym-HNS needs positive subset means, got AO={means['AO']!r} HO={means['HO']!r}")
    return harmonic_mean(means["AO"], means["HO"])


def superhuman_count(hns_by_game: Mapping[str, float], strict: bool = False) -> int:
    """Number of games at or above human level.

    ``strict=True`` counts only HNS > 1; the default counts HNS >= 1, so a
    score that exactly ties the human baseline is superhuman.
    """
    arr = check_values(list(hns_by_game.values()), name="hns_by_game")
    return int(np.sum(arr > 1.0) if strict else np.sum(arr >= 1.0))


def performance_profile(values, tau_grid) -> List[Tuple[float, float]]:
    """Fraction of values strictly greater than each tau of an ascending grid."""
    arr = np.sort(check_values(values))
    taus = np.asarray(list(tau_grid), dtype=float)
    if taus.ndim != 1 or taus.size == 0:
        raise ValidationError("tau grid must be a non-empty 1-D sequence")
    if np.any(np.diff(taus) < 0):
        raise ValidationError("tau grid must be sorted ascending")
    above = arr.size - np.searchsorted(arr, taus, side="right")
    return [(float(t), float(c) / arr.size) for t, c in zip(taus, above)]


METRICS: Dict[str, Callable] = {
    "mean": mean,
    "median": median,
    "iqm": iqm,
    "optgap": optimality_gap,
    "std": std_dev,
}
ALIASES = {"optimality_gap": "optgap", "std_dev": "std"}


def get_metric(name: Union[str, Callable]) -> Callable:
    if callable(name):
        return name
    key = ALIASES.get(name, name)
    try:
        return METRICS[key]
    except KeyError:
        raise UnknownMethodError(f"unknown metric: {name!r}") from None


# -- bootstrap ----------------------------------------------------------------


class BootstrapResult(NamedTuple):
    point: float
    low: float
    high: float
    level: float


def stratified_bootstrap(
    runs: Mapping[str, Sequence[float]],
    metric: Union[str, Callable] = "mean",
    resamples: int = 2000,
    level: float = 0.95,
    master_seed: int = 0,
    n_jobs: int = 1,
) -> BootstrapResult:
    """Percentile confidence interval from resampling runs within each game.

    Each resample ``r`` draws from its own generator seeded by
    ``(master_seed, r)``, so the result does not depend on ``n_jobs``.
    """
    fn = get_metric(metric)
    if not runs:
        raise ValidationError("no games to resample")
    if resamples < 1:
        raise ValidationError("resamples must be >= 1")
    if not 0.0 < level < 1.0:
        raise ValidationError("level must lie in (0, 1)")
    if master_seed < 0:
        raise ValidationError("master_seed must be non-negative")

    strata = [check_values(v, name=f"runs[{g!r}]") for g, v in runs.items()]
    flat = np.concatenate(strata)
    sizes = np.repeat([s.size for s in strata], [s.size for s in strata])
    offsets = np.repeat(np.cumsum([0] + [s.size for s in strata[:-1]]), [s.size for s in strata])
    point = float(fn(flat))

    def one(r):
        rng = np.random.default_rng(np.random.SeedSequence([master_seed, r]))
        return fn(flat[offsets + rng.integers(0, sizes)])

    if n_jobs == 1:
        stats = [one(r) for r in range(resamples)]
    else:
        with ThreadPoolExecutor(max_workers=n_jobs if n_jobs > 0 else None) as pool:
            stats = list(pool.map(one, range(resamples), chunksize=64))
    alpha = 100.0 * (1.0 - level) / 2.0
    low, high = np.percentile(np.asarray(stats, dtype=float), [alpha, 100.0 - alpha])
    return BootstrapResult(point, float(low), float(high), level)


# -- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class AggregateReport:
    method: str
    metrics: Mapping[str, float]
    intervals: Optional[Mapping[str, Tuple[float, float, float]]] = None

    def __post_init__(self):
        object.__setattr__(self, "metrics", dict(self.metrics))
        if self.intervals is not None:
            object.__setattr__(
                self, "intervals", {k: tuple(float(x) for x in v) for k, v in self.intervals.items()}
            )
            for name, (low, high, lvl) in self.intervals.items():
                if not 0.0 < lvl < 1.0:
                    raise ValidationError(f"interval {name!r}: level must lie in (0, 1)")
                if name in self.metrics and not low <= self.metrics[name] <= high:
                    raise ValidationError(f"interval {name!r} [{low}, {high}] excludes {self.metrics[name]}")

    __hash__ = None

    def to_dict(self):
        d = {"method": self.method, "metrics": dict(self.metrics)}
        d["intervals"] = {k: list(v) for k, v in (self.intervals or {}).items()}
        return d

    @classmethod
    def from_dict(cls, d):
        intervals = d.get("intervals") or None
        return cls(d["method"], d["metrics"], {k: tuple(v) for k, v in intervals.items()} if intervals else None)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=1)


PER_GAME_METRICS = ("superhuman", "mean", "median", "optgap_game", "symhns")
PER_RUN_METRICS = ("iqm", "optgap", "std")
METRIC_NAMES = PER_GAME_METRICS + PER_RUN_METRICS


def compute_report(
    method: str,
    per_game: Mapping[str, float],
    runs: Optional[Mapping[str, Sequence[float]]] = None,
    metrics: Sequence[str] = ("superhuman", "mean", "median", "iqm", "optgap", "symhns"),
    partition: Optional[PartitionMap] = None,
    bootstrap: Optional[dict] = None,
) -> AggregateReport:
    """Evaluate the named metrics for one method.

    Per-game metrics use ``per_game``; ``iqm``, ``optgap`` and ``std`` use the
    flattened ``runs`` when given (falling back to per-game values otherwise).
    With ``bootstrap=dict(resamples=..., level=..., seed=...)``, run-level
    metrics also get stratified bootstrap intervals.
    """
    per_game_values = list(per_game.values())
    run_values = np.concatenate([np.asarray(v, float) for v in runs.values()]) if runs else per_game_values
    out, intervals = {}, {}
    for name in metrics:
        name = ALIASES.get(name, name)
        if name == "superhuman":
            out[name] = superhuman_count(per_game)
        elif name in ("mean", "median"):
            out[name] = METRICS[name](per_game_values)
        elif name == "optgap_game":
            out[name] = optimality_gap(per_game_values)
        elif name == "symhns":
            if partition is None:
                raise ValidationError("symhns needs a partition")
            out[name] = sym_hns(per_game, partition)
        elif name in PER_RUN_METRICS:
            out[name] = METRICS[name](run_values)
            if bootstrap and runs:
                res = stratified_bootstrap(
                    runs, name, bootstrap.get("resamples", 2000), bootstrap.get("level", 0.95),
                    bootstrap.get("seed", 0), bootstrap.get("n_jobs", 1),
                )
                intervals[name] = (res.low, res.high, res.level)
        else:
            raise UnknownMethodError(f"unknown metric: {name!r}")
    return AggregateReport(method, out, intervals or None)
