"""Asymmetry diagnostics: visual bottlenecks, subset comparisons, AO/HO gap ratio."""

from __future__ import annotations

import math
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ._validation import check_covers, check_positive
from .aggregates import subset_means
from .core_data import GameMeta, ScoreTable
from .exceptions import UnknownMethodError, ValidationError
from .normalization import hns_by_game
from .partition import PartitionMap
from .reference import LATENT_BASELINES, PIXEL_METHODS

DEFAULT_BOTTLENECK_RATIO = 2.0
DEFAULT_ACTION_THRESHOLD = 10


def hns_matrix(table: ScoreTable, methods: Sequence[str]) -> Dict[Tuple[str, str], float]:
    """``{(game, method): per-game HNS}`` for the given methods."""
    out = {}
    for m in methods:
        for g, v in hns_by_game(table, m).items():
            out[g, m] = v
    return out


def visual_bottleneck(
    hns: Mapping[Tuple[str, str], float],
    pixel_methods: Sequence[str] = PIXEL_METHODS,
    other_methods: Sequence[str] = LATENT_BASELINES,
    ratio: float = DEFAULT_BOTTLENECK_RATIO,
) -> List[str]:
    """Games where every pixel method beats ``ratio`` times the best other method.

    The default ratio of 2 encodes "more than 100% better".
    """
    ratio = check_positive(ratio, "ratio")
    if not pixel_methods or not other_methods:
        raise ValidationError("need at least one pixel method and one other method")
    known = {m for _, m in hns}
    missing = [m for m in (*pixel_methods, *other_methods) if m not in known]
    if missing:
        raise UnknownMethodError(f"unknown method(s): {', '.join(missing)}")
    games = list(dict.fromkeys(g for g, _ in hns))
    flagged = []
    for g in games:
        check_covers(hns, [(g, m) for m in (*pixel_methods, *other_methods)], "HNS")
        best_other = max(hns[g, m] for m in other_methods)
        if min(hns[g, m] for m in pixel_methods) > ratio * best_other:
            flagged.append(g)
    return flagged


def _group_key(grouping, partition, meta, action_threshold):
    if grouping == "partition":
        if partition is None:
            raise ValidationError("partition grouping needs a partition")
        return lambda g: partition[g].value
    if meta is None:
        raise ValidationError(f"{grouping} grouping needs game metadata")
    if grouping == "shooter":
        return lambda g: "shooter" if meta[g].shooter else "non_shooter"
    if grouping == "actions":
        return lambda g: "high_actions" if meta[g].num_actions > action_threshold else "low_actions"
    raise ValidationError(f"unknown grouping: {grouping!r}")


def subset_comparison(
    hns_by_game: Mapping[str, float],
    grouping: str = "partition",
    *,
    partition: Optional[PartitionMap] = None,
    meta: Optional[Mapping[str, GameMeta]] = None,
    action_threshold: int = DEFAULT_ACTION_THRESHOLD,
) -> Dict[str, float]:
    """Mean HNS per group.

    ``grouping`` is ``"partition"`` (AO/HO), ``"shooter"`` (shooter/non_shooter)
    or ``"actions"`` (high_actions: more than ``action_threshold`` actions,
    low_actions otherwise).
    """
    key = _group_key(grouping, partition, meta, action_threshold)
    check_covers(partition.labels if grouping == "partition" else meta, hns_by_game, "grouping metadata")
    groups: Dict[str, List[float]] = {}
    for g, v in hns_by_game.items():
        groups.setdefault(key(g), []).append(v)
    return {k: math.fsum(v) / len(v) for k, v in groups.items()}


def group_sizes(games, grouping, *, partition=None, meta=None, action_threshold=DEFAULT_ACTION_THRESHOLD):
    """Number of games in each group of :func:`subset_comparison`."""
    key = _group_key(grouping, partition, meta, action_threshold)
    out: Dict[str, int] = {}
    for g in games:
        out[key(g)] = out.get(key(g), 0) + 1
    return out


def asymmetry_ratio(hns_by_game: Mapping[str, float], partition: PartitionMap) -> float:
    """mu(AO) / mu(HO)."""
    means = subset_means(hns_by_game, partition)
    if means["HO"] <= 0:
        raise ValidationError(f"Human-Optimal mean must be positive, got {means['HO']!r}")
    return means["AO"] / means["HO"]
