"""Human-normalized scores."""

from __future__ import annotations

import math
from collections import defaultdict
from typing import Dict, Iterable, List

from .core_data import HnsRecord, ScoreRecord, ScoreTable
from .exceptions import DegenerateBaselineError, UnknownMethodError, ValidationError


def hns(raw: float, random: float, human: float) -> float:
    """(raw - random) / (human - random). Unclipped: may be negative or exceed 1."""
    denom = human - random
    if denom == 0:
        raise DegenerateBaselineError(f"human score equals random score ({human!r})")
    return (raw - random) / denom


def hns_table(table: ScoreTable) -> List[HnsRecord]:
    """Normalize every record of a raw-score table, preserving keys and order."""
    if table.normalized:
        raise ValidationError("table is already normalized")
    out = []
    for r in table.records:
        try:
            m = table.meta[r.game]
        except KeyError:
            raise ValidationError(f"no metadata for game {r.game!r}") from None
        try:
            value = hns(r.score, m.random_score, m.human_score)
        except DegenerateBaselineError as exc:
            raise DegenerateBaselineError(f"game {r.game!r}: {exc}") from None
        out.append(HnsRecord(r.game, r.method, r.seed, value))
    return out


def normalize(table: ScoreTable) -> ScoreTable:
    """Like :func:`hns_table` but returns a ``normalized`` :class:`ScoreTable`."""
    recs = [ScoreRecord(h.game, h.method, h.seed, h.hns) for h in hns_table(table)]
    return ScoreTable(recs, table.meta, normalized=True)


def as_hns_records(table: ScoreTable) -> List[HnsRecord]:
    """Records of a table as HNS: normalized tables pass through, raw ones are normalized."""
    if table.normalized:
        return [HnsRecord(r.game, r.method, r.seed, r.score) for r in table.records]
    return hns_table(table)


def per_game_mean(records: Iterable[HnsRecord], method: str) -> Dict[str, float]:
    """Arithmetic mean over seeds for each game of ``method``."""
    grouped = defaultdict(list)
    for r in records:
        if r.method == method:
            grouped[r.game].append(r.hns)
    if not grouped:
        raise UnknownMethodError(f"unknown method: {method}")
    return {g: math.fsum(v) / len(v) for g, v in grouped.items()}


def hns_by_game(table: ScoreTable, method: str) -> Dict[str, float]:
    """Per-game mean HNS of ``method`` from either a raw or a normalized table."""
    return per_game_mean(as_hns_records(table), method)


def hns_runs(table: ScoreTable, method: str) -> Dict[str, List[float]]:
    """Per-game HNS of every run of ``method``, in seed order."""
    runs = table.runs(method)
    if table.normalized:
        return runs
    out = {}
    for g, values in runs.items():
        m = table.meta[g]
        out[g] = [hns(v, m.random_score, m.human_score) for v in values]
    return out
