"""Score tables: data model, CSV/JSON parsing, validation and export.

A :class:`ScoreTable` holds raw game scores (or, when ``normalized`` is set,
human-normalized scores) keyed by ``(game, method, seed)`` together with the
per-game constants needed to normalize them.  Tables are immutable; every
function here is pure.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from .exceptions import ParseError, UnknownMethodError, ValidationError

SCORE_HEADER = ("game", "method", "seed", "score")
HNS_HEADER = ("game", "method", "seed", "hns")
META_HEADER = ("game", "random", "human", "num_actions", "shooter")


@dataclass(frozen=True)
class GameMeta:
    name: str
    random_score: float
    human_score: float
    num_actions: int
    shooter: bool


@dataclass(frozen=True)
class ScoreRecord:
    game: str
    method: str
    seed: Optional[int]
    score: float

    @property
    def key(self):
        return (self.game, self.method, self.seed)


@dataclass(frozen=True)
class HnsRecord:
    game: str
    method: str
    seed: Optional[int]
    hns: float


@dataclass(frozen=True)
class Diagnostic:
    rule: str
    subject: str
    message: str

    def __str__(self):
        return f"[{self.rule}] {self.subject}: {self.message}"


@dataclass(frozen=True)
class ScoreTable:
    """Immutable collection of score records plus game metadata.

    ``normalized=True`` marks a table whose ``score`` fields already hold HNS
    values; normalization refuses such tables.
    """

    records: Tuple[ScoreRecord, ...] = ()
    meta: Mapping[str, GameMeta] = field(default_factory=dict)
    normalized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        object.__setattr__(self, "meta", dict(self.meta))

    __hash__ = None

    def __len__(self):
        return len(self.records)

    @property
    def methods(self) -> List[str]:
        return list(dict.fromkeys(r.method for r in self.records))

    @property
    def games(self) -> List[str]:
        return list(dict.fromkeys(r.game for r in self.records))

    def select(self, methods: Iterable[str]) -> "ScoreTable":
        methods = list(methods)
        missing = [m for m in methods if m not in self.methods]
        if missing:
            raise UnknownMethodError(f"unknown method(s): {', '.join(missing)}")
        wanted = set(methods)
        return ScoreTable([r for r in self.records if r.method in wanted], self.meta, self.normalized)

    def score(self, game: str, method: str, seed: Optional[int] = None) -> float:
        for r in self.records:
            if r.game == game and r.method == method and r.seed == seed:
                return r.score
        raise KeyError((game, method, seed))

    def runs(self, method: str) -> Dict[str, List[float]]:
        """Per-game values for ``method`` in seed order (a single value when unseeded)."""
        if method not in self.methods:
            raise UnknownMethodError(f"unknown method: {method}")
        grouped = defaultdict(list)
        for r in self.records:
            if r.method == method:
                grouped[r.game].append(r)
        return {
            g: [r.score for r in sorted(rs, key=lambda r: (r.seed is not None, r.seed or 0))]
            for g, rs in grouped.items()
        }

    def values(self, method: str) -> Dict[str, float]:
        """Per-game value for ``method``; seeded groups are averaged over seeds."""
        return {g: math.fsum(v) / len(v) for g, v in self.runs(method).items()}

    def to_frame(self):
        """Pivot to a pandas DataFrame indexed by game with one column per method."""
        import pandas as pd

        df = pd.DataFrame(
            [(r.game, r.method, r.seed, r.score) for r in self.records],
            columns=["game", "method", "seed", "score"],
        )
        frame = df.groupby(["game", "method"], sort=False)["score"].mean().unstack("method")
        return frame.reindex(index=self.games, columns=self.methods)


# -- validation ---------------------------------------------------------------


def validate(table: ScoreTable) -> List[Diagnostic]:
    """Check every table invariant; returns an empty list iff the table is valid."""
    diags: List[Diagnostic] = []
    for name, m in table.meta.items():
        if m.human_score == m.random_score:
            diags.append(Diagnostic("degenerate-baseline", name, "human score equals random score"))
        if not (math.isfinite(m.human_score) and math.isfinite(m.random_score)):
            diags.append(Diagnostic("non-finite", name, "baseline scores must be finite"))
        if m.num_actions < 1:
            diags.append(Diagnostic("num-actions", name, f"num_actions must be >= 1, got {m.num_actions}"))

    counts = Counter(r.key for r in table.records)
    for key, n in counts.items():
        if n > 1:
            diags.append(Diagnostic("duplicate-key", _fmt_key(key), f"appears {n} times"))

    for r in table.records:
        if r.game not in table.meta:
            diags.append(Diagnostic("missing-meta", _fmt_key(r.key), f"no metadata for game {r.game!r}"))
        if r.seed is not None and r.seed < 1:
            diags.append(Diagnostic("invalid-seed", _fmt_key(r.key), "seed must be >= 1"))
        if not math.isfinite(r.score):
            diags.append(Diagnostic("non-finite", _fmt_key(r.key), "score must be finite"))

    groups = defaultdict(set)
    for r in table.records:
        groups[r.game, r.method].add(r.seed)
    seed_counts = {}
    for (game, method), seeds in groups.items():
        if None in seeds and len(seeds) > 1:
            diags.append(
                Diagnostic("mixed-seeding", f"{game}/{method}", "seeded and unseeded records mixed")
            )
        elif None not in seeds:
            seed_counts[game, method] = len(seeds)
    if seed_counts:
        expected = Counter(seed_counts.values()).most_common(1)[0][0]
        for (game, method), n in seed_counts.items():
            if n != expected:
                diags.append(
                    Diagnostic("seed-cardinality", f"{game}/{method}", f"{n} seeds, expected {expected}")
                )
    return diags


def _fmt_key(key):
    game, method, seed = key
    return f"{game}/{method}" + ("" if seed is None else f"/seed={seed}")


def ensure_valid(table: ScoreTable) -> ScoreTable:
    diags = validate(table)
    if diags:
        raise ValidationError("; ".join(str(d) for d in diags))
    return table


# -- parsing ------------------------------------------------------------------


MetaSource = Union[str, Mapping[str, GameMeta], Iterable[GameMeta], None]


def parse_scores(text: str, format: str = "csv", meta: MetaSource = None) -> ScoreTable:
    """Parse a score table from CSV or JSON text and validate it.

    For CSV, ``meta`` supplies game metadata, either as meta-CSV text or as
    ready-made :class:`GameMeta` objects.  A JSON document carries its own
    ``meta`` section.  A header of ``game,method,seed,hns`` marks the table
    as already normalized.
    """
    if format == "csv":
        records, normalized = _parse_score_csv(text)
        meta_map = _coerce_meta(meta)
    elif format == "json":
        records, meta_map, normalized = _parse_json(text)
    else:
        raise ParseError(f"unsupported format: {format!r}")
    return ensure_valid(ScoreTable(records, meta_map, normalized))


def parse_meta(text: str) -> Dict[str, GameMeta]:
    _, rows = _csv_rows(text, META_HEADER)
    out = {}
    for lineno, row in rows:
        name, random_s, human_s, n_actions, shooter = row
        if shooter not in ("true", "false"):
            raise ParseError(f"line {lineno}: shooter must be 'true' or 'false', got {shooter!r}")
        out[name] = GameMeta(
            name,
            _float(random_s, lineno, "random"),
            _float(human_s, lineno, "human"),
            _int(n_actions, lineno, "num_actions"),
            shooter == "true",
        )
        if out[name].human_score == out[name].random_score:
            raise ValidationError(f"game {name!r}: human score equals random score")
    return out


def _coerce_meta(meta: MetaSource) -> Dict[str, GameMeta]:
    if meta is None:
        return {}
    if isinstance(meta, str):
        return parse_meta(meta)
    if isinstance(meta, Mapping):
        return dict(meta)
    return {m.name: m for m in meta}


def _csv_rows(text: str, header: Tuple[str, ...], alt_header: Optional[Tuple[str, ...]] = None):
    reader = csv.reader(io.StringIO(text))
    try:
        first = next(reader)
    except StopIteration:
        raise ParseError("empty input: missing header")
    first = tuple(c.strip() for c in first)
    if first != header and first != alt_header:
        raise ParseError(f"bad header {','.join(first)!r}, expected {','.join(header)!r}")
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise ParseError(f"line {lineno}: expected {len(header)} fields, got {len(row)}")
        rows.append((lineno, [c.strip() for c in row]))
    return first, rows


def _parse_score_csv(text: str):
    first, rows = _csv_rows(text, SCORE_HEADER, HNS_HEADER)
    records = []
    for lineno, (game, method, seed, score) in rows:
        if not game or not method:
            raise ParseError(f"line {lineno}: game and method must be non-empty")
        records.append(
            ScoreRecord(game, method, _int(seed, lineno, "seed") if seed else None, _float(score, lineno, first[3]))
        )
    return records, first == HNS_HEADER


def _parse_json(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "records" not in doc:
        raise ParseError('JSON document must be an object with a "records" list')
    try:
        meta = {}
        for m in doc.get("meta", []):
            if not isinstance(m["shooter"], bool):
                raise ParseError(f"meta {m['game']!r}: shooter must be a boolean")
            meta[m["game"]] = GameMeta(
                str(m["game"]), float(m["random"]), float(m["human"]), int(m["num_actions"]), m["shooter"]
            )
        records = []
        for r in doc["records"]:
            seed = r.get("seed")
            records.append(ScoreRecord(str(r["game"]), str(r["method"]), None if seed is None else int(seed), float(r["score"])))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed JSON record: {exc!r}") from exc
    for m in meta.values():
        if m.human_score == m.random_score:
            raise ValidationError(f"game {m.name!r}: human score equals random score")
    return records, meta, bool(doc.get("normalized", False))


def _float(s, lineno, name):
    try:
        return float(s)
    except ValueError:
        raise ParseError(f"line {lineno}: field {name!r} is not a number: {s!r}") from None


def _int(s, lineno, name):
    try:
        return int(s)
    except ValueError:
        raise ParseError(f"line {lineno}: field {name!r} is not an integer: {s!r}") from None


# -- export -------------------------------------------------------------------


def export(table: ScoreTable, format: str = "csv") -> str:
    """Serialize ``table``; ``parse_scores(export(t), ...)`` reproduces ``t``.

    CSV output holds only the records; pair it with :func:`export_meta`.
    """
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(HNS_HEADER if table.normalized else SCORE_HEADER)
        for r in table.records:
            w.writerow([r.game, r.method, "" if r.seed is None else r.seed, repr(float(r.score))])
        return buf.getvalue()
    if format == "json":
        doc = {
            "normalized": table.normalized,
            "meta": [
                {"game": m.name, "random": m.random_score, "human": m.human_score,
                 "num_actions": m.num_actions, "shooter": m.shooter}
                for m in table.meta.values()
            ],
            "records": [
                {"game": r.game, "method": r.method, "seed": r.seed, "score": r.score} for r in table.records
            ],
        }
        return json.dumps(doc, indent=1) + "\n"
    raise ParseError(f"unsupported format: {format!r}")


def export_meta(table_or_meta) -> str:
    meta = table_or_meta.meta if isinstance(table_or_meta, ScoreTable) else table_or_meta
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(META_HEADER)
    for m in meta.values():
        w.writerow([m.name, repr(float(m.random_score)), repr(float(m.human_score)), m.num_actions,
                    "true" if m.shooter else "false"])
    return buf.getvalue()


def read_table(path, meta_path=None, meta: MetaSource = None) -> ScoreTable:
    """Load a table from disk; CSV files pick up a sibling ``<stem>.meta.csv`` when present."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        return parse_scores(text, "json")
    if meta_path is None and meta is None:
        sibling = path.with_name(path.stem + ".meta.csv")
        if sibling.exists():
            meta_path = sibling
    if meta_path is not None:
        meta = Path(meta_path).read_text(encoding="utf-8")
    return parse_scores(text, "csv", meta)


# -- embedded reference data --------------------------------------------------


@dataclass(frozen=True)
class ReferenceData:
    """Embedded Atari100k scores and baselines.

    ``full``: per-game mean raw scores (Random, Human, and seven agents).
    ``seeds``: seed-level HNS, five seeds per game for six agents.
    ``averaged``: raw scores of the averaged four-baseline agent.
    ``averaged_hns``: rounded HNS printed for the averaged agent.
    ``bottleneck_hns``: HNS printed for the visually bottlenecked games.
    """

    full: ScoreTable
    seeds: ScoreTable
    averaged: ScoreTable
    averaged_hns: Mapping[str, float]
    bottleneck_hns: Mapping[Tuple[str, str], float]

    __hash__ = None


def _data_text(name):
    return resources.files("perfasym").joinpath("data", name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def embedded_reference() -> ReferenceData:
    from . import reference

    meta = parse_meta(_data_text("atari100k_meta.csv"))
    return ReferenceData(
        full=parse_scores(_data_text("atari100k_scores.csv"), "csv", meta),
        seeds=parse_scores(_data_text("atari100k_seed_hns.csv"), "csv", meta),
        averaged=parse_scores(_data_text("atari100k_averaged.csv"), "csv", meta),
        averaged_hns=dict(reference.AVERAGED_AGENT_HNS),
        bottleneck_hns=dict(reference.BOTTLENECK_HNS),
    )
