"""Evaluation toolkit for performance asymmetry on Atari100k, plus world-model numerics.

Scores are human-normalized (HNS), games are split into Agent-Optimal and
Human-Optimal subsets, and methods are compared with standard aggregates and
the harmonic-mean Sym-HNS.
"""

from .aggregates import (
    AggregateReport,
    BootstrapResult,
    compute_report,
    harmonic_mean,
    iqm,
    mean,
    median,
    optimality_gap,
    performance_profile,
    std_dev,
    stratified_bootstrap,
    subset_means,
    superhuman_count,
    sym_hns,
)
from .analysis import asymmetry_ratio, hns_matrix, subset_comparison, visual_bottleneck
from .core_data import (
    Diagnostic,
    GameMeta,
    HnsRecord,
    ScoreRecord,
    ScoreTable,
    embedded_reference,
    export,
    parse_meta,
    parse_scores,
    read_table,
    validate,
)
from .estimators import AsymmetryPartitioner, HumanNormalizer
from .exceptions import DegenerateBaselineError, ParseError, PerfAsymError, UnknownMethodError, ValidationError
from .normalization import hns, hns_by_game, hns_runs, hns_table, normalize, per_game_mean
from .partition import Label, PartitionMap, derive_partition, feature_summary, reference_partition
from .report import render

__version__ = "0.1.0"

__all__ = [
    "AggregateReport",
    "AsymmetryPartitioner",
    "BootstrapResult",
    "DegenerateBaselineError",
    "Diagnostic",
    "GameMeta",
    "HnsRecord",
    "HumanNormalizer",
    "Label",
    "ParseError",
    "PartitionMap",
    "PerfAsymError",
    "ScoreRecord",
    "ScoreTable",
    "UnknownMethodError",
    "ValidationError",
    "asymmetry_ratio",
    "compute_report",
    "derive_partition",
    "embedded_reference",
    "export",
    "feature_summary",
    "harmonic_mean",
    "hns",
    "hns_by_game",
    "hns_matrix",
    "hns_runs",
    "hns_table",
    "iqm",
    "mean",
    "median",
    "normalize",
    "optimality_gap",
    "parse_meta",
    "parse_scores",
    "per_game_mean",
    "performance_profile",
    "read_table",
    "reference_partition",
    "render",
    "std_dev",
    "stratified_bootstrap",
    "subset_comparison",
    "subset_means",
    "superhuman_count",
    "sym_hns",
    "validate",
    "visual_bottleneck",
]
