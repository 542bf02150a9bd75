import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from perfasym.exceptions import ParseError, ValidationError
from perfasym.normalization import hns_by_game
from perfasym.partition import (
    Label,
    PartitionMap,
    averaged_reference,
    derive_partition,
    feature_summary,
)
from perfasym.reference import AGENT_OPTIMAL_GAMES, HUMAN_OPTIMAL_GAMES


def test_boxing_baseline_average(ref):
    avg = averaged_reference(ref.full)
    parts = sorted(hns_by_game(ref.full, m)["Boxing"] for m in ("IRIS", "TWM", "DreamerV3", "STORM"))
    assert parts == pytest.approx(sorted([6.452, 5.833, 6.142, 6.633]), abs=0.005)
    assert avg["Boxing"] == pytest.approx(sum(parts) / 4, rel=1e-12)
    assert avg["Boxing"] == pytest.approx(6.27, abs=0.01)


def test_single_method_unchanged(ref):
    assert averaged_reference(ref.full, ["JEDI"]) == hns_by_game(ref.full, "JEDI")


def test_freeway_averaged(ref):
    avg = averaged_reference(ref.averaged, ["AverageAgent"])
    assert avg["Freeway"] == pytest.approx(22.225 / 29.6, abs=1e-4)


def test_reference_split(partition):
    assert sorted(partition.agent_optimal) == sorted(AGENT_OPTIMAL_GAMES)
    assert sorted(partition.human_optimal) == sorted(HUMAN_OPTIMAL_GAMES)
    assert partition["Freeway"] is Label.AGENT_OPTIMAL
    assert len(partition) == 26


def test_all_zero_human_optimal():
    p = derive_partition({"a": 0.0, "b": 0.0})
    assert p.human_optimal == ["a", "b"]


def test_tie_goes_human_optimal():
    p = derive_partition({"a": 0.75, "b": 0.7509})
    assert p["a"] is Label.HUMAN_OPTIMAL and p["b"] is Label.AGENT_OPTIMAL


def test_empty_and_bad_threshold():
    with pytest.raises(ValidationError):
        derive_partition({})
    with pytest.raises(ValidationError):
        derive_partition({"a": 1.0}, float("nan"))


def test_json_round_trip(partition):
    doc = json.loads(partition.to_json())
    assert doc["threshold"] == 0.75 and doc["labels"]["Boxing"] == "AO"
    back = PartitionMap.from_json(partition.to_json())
    assert back.labels == partition.labels
    with pytest.raises(ParseError):
        PartitionMap.from_json('{"labels": {"a": "XX"}, "threshold": 1}')


def test_feature_summary(partition, ref):
    fs = feature_summary(partition, ref.full.meta)
    assert fs["AO"]["shooter_count"] == 2
    assert fs["HO"]["shooter_count"] == 7
    assert fs["AO"]["mean_num_actions"] == pytest.approx((18 + 18 + 9 + 8 + 18 + 18 + 7 + 4 + 14 + 6 + 18 + 6 + 3) / 13)
    assert fs["HO"]["mean_num_actions"] > fs["AO"]["mean_num_actions"]


def test_feature_summary_single(ref):
    p = derive_partition({"Pong": 2.0})
    fs = feature_summary(p, ref.full.meta)
    assert fs == {"AO": {"n_games": 1, "mean_num_actions": 6.0, "shooter_count": int(ref.full.meta["Pong"].shooter)}}


hns_maps = st.dictionaries(st.text("abcdef", min_size=1, max_size=3), st.floats(-5, 20), min_size=1, max_size=12)


@given(hns_maps, st.floats(-1, 5), st.floats(0, 3))
def test_total_and_monotone(ref_hns, t, dt):
    lo, hi = derive_partition(ref_hns, t), derive_partition(ref_hns, t + dt)
    assert len(lo.agent_optimal) + len(lo.human_optimal) == len(ref_hns)
    assert set(hi.agent_optimal) <= set(lo.agent_optimal)


@given(hns_maps, st.floats(-1, 5), st.floats(0.1, 10))
def test_scale_invariance(ref_hns, t, k):
    a = derive_partition(ref_hns, t)
    b = derive_partition({g: v * k for g, v in ref_hns.items()}, t * k)
    # tolerate float rounding exactly at the boundary
    diff = [g for g in ref_hns if a[g] != b[g]]
    assert all(abs(ref_hns[g] - t) <= 1e-9 * max(1, abs(t)) for g in diff)
