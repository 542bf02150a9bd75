"""Agent-Optimal / Human-Optimal task partition."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Sequence, Tuple

from ._validation import check_covers, check_finite_scalar, check_methods
from .core_data import GameMeta, ScoreTable, embedded_reference
from .exceptions import ParseError, ValidationError
from .normalization import hns_by_game
from .reference import AVERAGED_METHOD, BASELINE_METHODS

DEFAULT_THRESHOLD = 0.75


class Label(str, Enum):
    AGENT_OPTIMAL = "AO"
    HUMAN_OPTIMAL = "HO"


@dataclass(frozen=True)
class PartitionMap:
    labels: Mapping[str, Label]
    threshold: float = DEFAULT_THRESHOLD
    reference_methods: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "labels", {g: Label(v) for g, v in self.labels.items()})
        object.__setattr__(self, "reference_methods", tuple(self.reference_methods))

    __hash__ = None

    def __getitem__(self, game):
        return self.labels[game]

    def __len__(self):
        return len(self.labels)

    @property
    def agent_optimal(self) -> List[str]:
        return [g for g, lab in self.labels.items() if lab is Label.AGENT_OPTIMAL]

    @property
    def human_optimal(self) -> List[str]:
        return [g for g, lab in self.labels.items() if lab is Label.HUMAN_OPTIMAL]

    def groups(self) -> Dict[Label, List[str]]:
        return {Label.AGENT_OPTIMAL: self.agent_optimal, Label.HUMAN_OPTIMAL: self.human_optimal}

    def to_json(self) -> str:
        return json.dumps(
            {"threshold": self.threshold, "labels": {g: lab.value for g, lab in self.labels.items()}},
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str) -> "PartitionMap":
        try:
            doc = json.loads(text)
            return cls({g: Label(v) for g, v in doc["labels"].items()}, float(doc["threshold"]))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed partition JSON: {exc}") from exc


def averaged_reference(table: ScoreTable, methods: Sequence[str] = BASELINE_METHODS) -> Dict[str, float]:
    """Per-game arithmetic mean of the given methods' HNS."""
    methods = list(methods)
    if not methods:
        raise ValidationError("at least one reference method is required")
    check_methods(table.methods, methods)
    per_method = [hns_by_game(table, m) for m in methods]
    games = [g for g in table.games if all(g in pm for pm in per_method)]
    return {g: math.fsum(pm[g] for pm in per_method) / len(per_method) for g in games}


def derive_partition(
    reference_hns: Mapping[str, float],
    threshold: float = DEFAULT_THRESHOLD,
    reference_methods: Sequence[str] = (),
) -> PartitionMap:
    """Label a game Agent-Optimal iff its reference HNS strictly exceeds ``threshold``."""
    if not reference_hns:
        raise ValidationError("reference HNS map is empty")
    threshold = check_finite_scalar(threshold, "threshold")
    labels = {
        g: Label.AGENT_OPTIMAL if v > threshold else Label.HUMAN_OPTIMAL for g, v in reference_hns.items()
    }
    return PartitionMap(labels, threshold, tuple(reference_methods))


def reference_partition(threshold: float = DEFAULT_THRESHOLD, source: str = "averaged") -> PartitionMap:
    """Partition of the embedded reference data.

    ``source="averaged"`` uses the embedded averaged-agent raw scores;
    ``source="baselines"`` recomputes the average from the four baselines' mean scores.
    """
    ref = embedded_reference()
    if source == "averaged":
        return derive_partition(averaged_reference(ref.averaged, [AVERAGED_METHOD]), threshold, BASELINE_METHODS)
    if source == "baselines":
        return derive_partition(averaged_reference(ref.full, BASELINE_METHODS), threshold, BASELINE_METHODS)
    raise ValidationError(f"unknown partition source: {source!r}")


def feature_summary(partition: PartitionMap, meta: Mapping[str, GameMeta]) -> Dict[str, dict]:
    """Mean action count and shooter count for each label present in ``partition``."""
    check_covers(meta, partition.labels, "game metadata")
    out = {}
    for label, games in partition.groups().items():
        if not games:
            continue
        out[label.value] = {
            "n_games": len(games),
            "mean_num_actions": math.fsum(meta[g].num_actions for g in games) / len(games),
            "shooter_count": sum(1 for g in games if meta[g].shooter),
        }
    return out
