"""Command-line interface: ``perfasym <command> ...`` (or ``python -m perfasym``).

Exit status is 0 on success, 1 for validation or domain errors and 2 for I/O
or parse errors.  Diagnostics go to stderr; results go to stdout or ``--out``.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from . import report as rp
from .aggregates import (
    METRIC_NAMES,
    PER_RUN_METRICS,
    compute_report,
    performance_profile,
    stratified_bootstrap,
    subset_means,
    sym_hns,
)
from .analysis import DEFAULT_ACTION_THRESHOLD, DEFAULT_BOTTLENECK_RATIO, asymmetry_ratio, subset_comparison, visual_bottleneck
from .core_data import ScoreTable, embedded_reference, ensure_valid, export, export_meta, parse_scores, read_table, validate
from .exceptions import ParseError, PerfAsymError
from .normalization import hns_by_game, normalize
from .partition import DEFAULT_THRESHOLD, PartitionMap, averaged_reference, derive_partition, feature_summary, reference_partition
from .reference import AGENT_METHODS, BASELINE_METHODS, BUILTIN_NAME, LATENT_BASELINES, PIXEL_METHODS
from .wm import (
    ConditioningContext,
    DiffusionConfig,
    Trajectory,
    actor_critic_losses,
    dyn_loss,
    gaussian_denoiser,
    gaussian_raw_network,
    lambda_returns,
    precondition_coeffs,
    reverse_sample,
    reward_term_loss,
)
from .wm.preconditioning import LATENT_SHAPE

DEFAULT_RESAMPLES = 2000
DEFAULT_LEVEL = 0.95
REPORT_METRICS = ("superhuman", "mean", "median", "iqm", "optgap", "std", "symhns")
FIGURE_METRICS = ("mean", "median", "iqm", "optgap", "symhns")


class UsageError(PerfAsymError, ValueError):
    """Bad combination of command-line options."""


# -- data loading -------------------------------------------------------------


class Dataset:
    """A score table plus optional seed-level HNS runs, normalized lazily."""

    def __init__(self, table: ScoreTable, runs: Optional[ScoreTable] = None):
        self.table = table
        self.runs_table = runs if runs is not None else (table if table.normalized else None)
        self.meta = table.meta

    @property
    def methods(self) -> List[str]:
        return self.table.methods

    def agent_methods(self) -> List[str]:
        return [m for m in self.methods if m not in ("Random", "Human")]

    def per_game(self, method: str) -> Dict[str, float]:
        if self.table.normalized:
            return self.table.values(method)
        return hns_by_game(self.table, method)

    def runs(self, method: str) -> Optional[Dict[str, List[float]]]:
        if self.runs_table is None or method not in self.runs_table.methods:
            return None
        return self.runs_table.runs(method)


def _builtin_name(value):
    if value != BUILTIN_NAME:
        raise UsageError(f"unknown builtin dataset {value!r} (available: {BUILTIN_NAME})")
    return value


def load_dataset(args) -> Dataset:
    if getattr(args, "builtin", None):
        _builtin_name(args.builtin)
        if getattr(args, "scores", None):
            raise UsageError("give either a scores file or --builtin, not both")
        ref = embedded_reference()
        return Dataset(ref.full, ref.seeds)
    if not getattr(args, "scores", None):
        raise UsageError("a scores file or --builtin is required")
    path = Path(args.scores)
    table = ensure_valid(read_table(path, meta_path=getattr(args, "meta", None)))
    runs_path = getattr(args, "runs", None)
    if runs_path is None and path.suffix != ".json":
        sibling = path.with_name(path.stem + ".runs.csv")
        runs_path = sibling if sibling.exists() else None
    runs = None
    if runs_path is not None:
        runs = ensure_valid(parse_scores(Path(runs_path).read_text(encoding="utf-8"), "csv", table.meta))
    return Dataset(table, runs)


def _methods(args, data: Dataset) -> List[str]:
    requested = []
    for chunk in args.method or []:
        requested += [m for m in chunk.split(",") if m]
    if requested:
        return requested
    present = [m for m in AGENT_METHODS if m in data.methods]
    return present or data.agent_methods()


def _partition(args) -> PartitionMap:
    if getattr(args, "partition", None):
        return PartitionMap.from_json(Path(args.partition).read_text(encoding="utf-8"))
    return reference_partition(getattr(args, "threshold", DEFAULT_THRESHOLD) or DEFAULT_THRESHOLD)


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def _read_json(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc


def _latent(obj, name="latent") -> np.ndarray:
    """Decode ``{"shape": [...], "values": [...]}`` (or a bare number/list)."""
    if isinstance(obj, dict):
        try:
            return np.asarray(obj["values"], dtype=float).reshape(obj["shape"])
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"{name}: expected {{'shape': [...], 'values': [...]}}: {exc}") from exc
    try:
        return np.asarray(obj, dtype=float)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"{name}: not numeric") from exc


def _encode_latent(z: np.ndarray):
    return {"shape": list(z.shape), "values": [float(v) for v in z.ravel()]}


# -- commands -----------------------------------------------------------------


def cmd_validate(args) -> int:
    table = read_table(args.scores, meta_path=args.meta)
    diags = validate(table)
    for d in diags:
        print(str(d), file=sys.stderr)
    if diags:
        return 1
    print(f"ok: {len(table)} records, {len(table.games)} games, {len(table.methods)} methods")
    return 0


def cmd_hns(args) -> int:
    data = load_dataset(args)
    table = data.table if data.table.normalized else normalize(data.table)
    if args.method:
        table = table.select(_methods(args, data))
    _emit(export(table, args.format), args.out)
    return 0


def cmd_partition(args) -> int:
    if args.reference:
        table = ensure_valid(read_table(args.reference, meta_path=args.meta))
        methods = [m for m in (args.reference_methods or ",".join(BASELINE_METHODS)).split(",") if m]
        if table.normalized:
            per_method = [table.values(m) for m in methods]
            ref = {g: float(np.mean([v[g] for v in per_method])) for g in table.games}
        else:
            ref = averaged_reference(table, methods)
        part = derive_partition(ref, args.threshold, methods)
    else:
        _builtin_name(args.builtin or BUILTIN_NAME)
        part = reference_partition(args.threshold, args.source)
    if args.format == "json":
        text = part.to_json() + "\n"
    else:
        lines = ["| game | label |", "|---|---|"] + [f"| {g} | {lab.value} |" for g, lab in part.labels.items()]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _bootstrap_opts(args):
    if not args.resamples:
        return None
    return {"resamples": args.resamples, "level": args.level, "seed": args.seed, "n_jobs": args.jobs}


def cmd_aggregate(args) -> int:
    data = load_dataset(args)
    metrics = [m for m in args.metrics.split(",") if m]
    part = _partition(args) if "symhns" in metrics else None
    reports = [
        compute_report(m, data.per_game(m), data.runs(m), metrics, part, _bootstrap_opts(args))
        for m in _methods(args, data)
    ]
    _emit(rp.render(reports, args.format), args.out)
    return 0


def cmd_bootstrap(args) -> int:
    data = load_dataset(args)
    out = []
    for m in _methods(args, data):
        runs = data.runs(m)
        if runs is None:
            raise UsageError(f"no seed-level runs for {m}; pass --runs")
        res = stratified_bootstrap(runs, args.metric, args.resamples, args.level, args.seed, args.jobs)
        out.append({
            "method": m, "metric": args.metric, "point": res.point, "low": res.low, "high": res.high,
            "level": res.level, "resamples": args.resamples, "seed": args.seed,
        })
    _emit(_dump(out), args.out)
    return 0


def _profiles(data: Dataset, methods, tau_max, intervals):
    grid = np.linspace(0.0, tau_max, intervals + 1)
    out = {}
    for m in methods:
        runs = data.runs(m)
        values = np.concatenate([np.asarray(v, float) for v in runs.values()]) if runs else list(data.per_game(m).values())
        out[m] = performance_profile(values, grid)
    return out


def cmd_profile(args) -> int:
    if args.intervals < 1 or not args.tau_max > 0:
        raise UsageError("need --intervals >= 1 and --tau-max > 0")
    data = load_dataset(args)
    profiles = _profiles(data, _methods(args, data), args.tau_max, args.intervals)
    if args.format == "svg":
        text = rp.profile_svg(profiles)
    else:
        rows = ["method,tau,fraction"] + [f"{m},{t!r},{f!r}" for m, prof in profiles.items() for t, f in prof]
        text = "\n".join(rows) + "\n"
    _emit(text, args.out)
    return 0


def cmd_bottleneck(args) -> int:
    data = load_dataset(args)
    pixel = args.pixel_methods.split(",")
    other = args.other_methods.split(",")
    hns = {}
    for m in (*pixel, *other):
        for g, v in data.per_game(m).items():
            hns[g, m] = v
    flagged = visual_bottleneck(hns, pixel, other, args.ratio)
    detail = {g: {m: hns[g, m] for m in (*pixel, *other)} for g in flagged}
    _emit(_dump({"ratio": args.ratio, "pixel_methods": pixel, "other_methods": other,
                 "flagged": flagged, "hns": detail}), args.out)
    return 0


def cmd_asymmetry(args) -> int:
    data = load_dataset(args)
    part = _partition(args)
    out = {"threshold": part.threshold, "grouping": args.grouping, "methods": {}}
    for m in _methods(args, data):
        per_game = data.per_game(m)
        entry = {"groups": subset_comparison(per_game, args.grouping, partition=part, meta=data.meta,
                                             action_threshold=args.action_threshold)}
        if args.grouping == "partition":
            means = subset_means(per_game, part)
            entry["ratio"] = asymmetry_ratio(per_game, part) if means["HO"] > 0 else None
            entry["symhns"] = sym_hns(per_game, part) if min(means.values()) > 0 else None
        out["methods"][m] = entry
    out["features"] = feature_summary(part, data.meta)
    _emit(_dump(out), args.out)
    return 0


def cmd_report(args) -> int:
    data = load_dataset(args)
    part = _partition(args)
    methods = _methods(args, data)
    boot = _bootstrap_opts(args)
    reports = [compute_report(m, data.per_game(m), data.runs(m), REPORT_METRICS, part, boot) for m in methods]
    out = Path(args.out)
    (out / "figures").mkdir(parents=True, exist_ok=True)
    md = rp.render(reports, "md")
    md += "\n## Partition\n\n| label | games |\n|---|---|\n"
    for label, games in part.groups().items():
        md += f"| {label.value} | {', '.join(games)} |\n"
    (out / "report.md").write_text(md, encoding="utf-8")
    (out / "report.csv").write_text(rp.render(reports, "csv"), encoding="utf-8")
    (out / "report.json").write_text(rp.render(reports, "json"), encoding="utf-8")
    bars = {r.method: {k: float(r.metrics[k]) for k in FIGURE_METRICS if k in r.metrics} for r in reports}
    (out / "figures" / "aggregates.svg").write_text(rp.bar_chart_svg(bars, "Aggregate metrics", "HNS"), encoding="utf-8")
    subsets = {m: subset_means(data.per_game(m), part) for m in methods}
    (out / "figures" / "subsets.svg").write_text(
        rp.bar_chart_svg(subsets, "Mean HNS on Agent-Optimal vs Human-Optimal games", "mean HNS"), encoding="utf-8"
    )
    profiles = _profiles(data, methods, args.tau_max, args.intervals)
    (out / "figures" / "profiles.svg").write_text(rp.profile_svg(profiles), encoding="utf-8")
    print(f"wrote report for {len(methods)} methods to {out}", file=sys.stderr)
    return 0


def cmd_dataset_export(args) -> int:
    _builtin_name(args.builtin)
    ref = embedded_reference()
    out = Path(args.out)
    out.write_text(export(ref.full, args.format), encoding="utf-8")
    if args.format == "csv":
        out.with_name(out.stem + ".meta.csv").write_text(export_meta(ref.full), encoding="utf-8")
        out.with_name(out.stem + ".runs.csv").write_text(export(ref.seeds, "csv"), encoding="utf-8")
    print(f"wrote {len(ref.full)} score rows to {out}", file=sys.stderr)
    return 0


# -- world-model numerics -----------------------------------------------------


def cmd_wm_coeffs(args) -> int:
    rows = []
    for s in args.sigma:
        c_skip, c_out, c_in, c_noise = precondition_coeffs(s, args.sigma_data)
        rows.append({"sigma": s, "c_skip": c_skip, "c_out": c_out, "c_in": c_in, "c_noise": c_noise})
    _emit(_dump({"sigma_data": args.sigma_data, "coeffs": rows}), args.out)
    return 0


def _diffusion_config(args, doc) -> DiffusionConfig:
    cfg = dict(doc.get("config", {}))
    for key in ("steps", "sigma_data", "s_churn", "sigma_min", "sigma_max", "rho", "clamp_scale"):
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    return DiffusionConfig.from_dict(cfg)


def cmd_wm_sample(args) -> int:
    doc = _read_json(args.input) if args.input else {}
    cfg = _diffusion_config(args, doc)
    shape = tuple(doc.get("shape", [int(x) for x in args.shape.split(",")] if args.shape else LATENT_SHAPE))
    mu = _latent(doc.get("mu", args.mu), "mu")
    data_std = float(doc.get("data_std", args.data_std))
    n = int(doc.get("n", args.n))
    if n < 1:
        raise UsageError("--n must be >= 1")
    denoiser = gaussian_denoiser(mu, data_std)
    ctx = ConditioningContext()

    # one substream per draw keeps output independent of --jobs
    def one(i):
        rng = np.random.default_rng(np.random.SeedSequence([args.seed, i]))
        return reverse_sample(denoiser, ctx, cfg, rng, shape)

    if args.jobs == 1:
        draws = [one(i) for i in range(n)]
    else:
        with ThreadPoolExecutor(max_workers=args.jobs if args.jobs > 0 else None) as pool:
            draws = list(pool.map(one, range(n)))
    z = np.stack(draws)
    _emit(_dump({"config": cfg.to_dict(), "seed": args.seed, "samples": _encode_latent(z)}), args.out)
    return 0


def _constant_raw(output):
    def raw(x, ctx):
        return np.broadcast_to(output, np.shape(x)).astype(float)

    return raw


def cmd_wm_loss(args) -> int:
    doc = _read_json(args.input)
    out = {}
    if "dyn" in doc:
        d = doc["dyn"]
        clean, noised = _latent(d.get("clean"), "clean"), _latent(d.get("noised"), "noised")
        sigma_data = float(d.get("sigma_data", 1.0))
        if "raw_output" in d:
            raw = _constant_raw(_latent(d["raw_output"], "raw_output"))
        else:
            raw = gaussian_raw_network(_latent(d.get("mu", 0.0), "mu"), float(d.get("data_std", 1.0)), sigma_data)
        out["dyn"] = dyn_loss(raw, clean, noised, float(d["sigma"]), None, sigma_data)
    if "reward_term" in doc:
        d = doc["reward_term"]
        out["reward_term"] = reward_term_loss(d["reward_logits"], d["done_logits"], d["rewards"], d["dones"])
    if "actor_critic" in doc:
        d = doc["actor_critic"]
        policy, value = actor_critic_losses(
            d["log_probs"], d["entropies"], d["returns"], d["values"], d.get("entropy_weight", args.entropy_weight)
        )
        out["actor_critic"] = {"policy": policy, "value": value}
    if not out:
        raise UsageError("input must contain at least one of 'dyn', 'reward_term', 'actor_critic'")
    _emit(_dump(out), args.out)
    return 0


def cmd_wm_returns(args) -> int:
    doc = _read_json(args.input)
    doc.setdefault("gamma", args.gamma)
    doc.setdefault("lambda", args.lam)
    traj = Trajectory.from_dict(doc)
    _emit(_dump({"gamma": traj.gamma, "lambda": traj.lam, "returns": [float(r) for r in lambda_returns(traj)]}), args.out)
    return 0


# -- parser -------------------------------------------------------------------


def _add_source(p, runs=True):
    p.add_argument("scores", nargs="?", help="score table (CSV or JSON)")
    p.add_argument("--builtin", nargs="?", const=BUILTIN_NAME, metavar="NAME",
                   help=f"use the embedded dataset ({BUILTIN_NAME})")
    p.add_argument("--meta", help="game metadata CSV (default: sibling <stem>.meta.csv)")
    if runs:
        p.add_argument("--runs", help="seed-level HNS CSV (default: sibling <stem>.runs.csv)")
    p.add_argument("--method", action="append", help="method(s), repeatable or comma-separated")


def _add_bootstrap(p, resamples):
    p.add_argument("--resamples", type=int, default=resamples)
    p.add_argument("--level", type=float, default=DEFAULT_LEVEL)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="worker threads; results do not depend on it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="perfasym", description=__doc__.splitlines()[0], allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a score table", allow_abbrev=False)
    p.add_argument("scores")
    p.add_argument("--meta")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("hns", help="human-normalize a score table", allow_abbrev=False)
    _add_source(p, runs=False)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_hns)

    p = sub.add_parser("partition", help="Agent-Optimal / Human-Optimal split", allow_abbrev=False)
    p.add_argument("--builtin", nargs="?", const=BUILTIN_NAME, metavar="NAME")
    p.add_argument("--source", choices=("averaged", "baselines"), default="averaged")
    p.add_argument("--reference", help="derive from this score table instead of the embedded data")
    p.add_argument("--reference-methods", help="comma-separated methods to average (default: four baselines)")
    p.add_argument("--meta")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("aggregate", help="aggregate metrics per method", allow_abbrev=False)
    _add_source(p)
    p.add_argument("--metrics", default="mean,median,iqm,optgap,symhns",
                   help=f"comma-separated, from: {','.join(METRIC_NAMES)}")
    p.add_argument("--partition", help="partition JSON (default: embedded split)")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--format", choices=rp.FORMATS, default="json")
    p.add_argument("--out")
    _add_bootstrap(p, 0)
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("bootstrap", help="stratified bootstrap confidence interval", allow_abbrev=False)
    _add_source(p)
    p.add_argument("--metric", choices=PER_RUN_METRICS + ("mean", "median"), default="iqm")
    p.add_argument("--out")
    _add_bootstrap(p, DEFAULT_RESAMPLES)
    p.set_defaults(func=cmd_bootstrap)

    p = sub.add_parser("profile", help="performance profile", allow_abbrev=False)
    _add_source(p)
    p.add_argument("--tau-max", type=float, default=8.0)
    p.add_argument("--intervals", type=int, default=80)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("bottleneck", help="flag visually bottlenecked games", allow_abbrev=False)
    _add_source(p, runs=False)
    p.add_argument("--pixel-methods", default=",".join(PIXEL_METHODS))
    p.add_argument("--other-methods", default=",".join(LATENT_BASELINES))
    p.add_argument("--ratio", type=float, default=DEFAULT_BOTTLENECK_RATIO)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bottleneck)

    p = sub.add_parser("asymmetry", help="subset means and AO/HO ratio", allow_abbrev=False)
    _add_source(p, runs=False)
    p.add_argument("--partition")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--grouping", choices=("partition", "shooter", "actions"), default="partition")
    p.add_argument("--action-threshold", type=int, default=DEFAULT_ACTION_THRESHOLD)
    p.add_argument("--out")
    p.set_defaults(func=cmd_asymmetry)

    p = sub.add_parser("report", help="write report.{md,csv,json} and figures/*.svg", allow_abbrev=False)
    _add_source(p)
    p.add_argument("--partition")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--tau-max", type=float, default=8.0)
    p.add_argument("--intervals", type=int, default=80)
    p.add_argument("--out", required=True)
    _add_bootstrap(p, DEFAULT_RESAMPLES)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("dataset", help="dataset utilities", allow_abbrev=False)
    dsub = p.add_subparsers(dest="dataset_command", required=True)
    q = dsub.add_parser("export", help="write the embedded dataset to disk", allow_abbrev=False)
    q.add_argument("--builtin", default=BUILTIN_NAME)
    q.add_argument("--format", choices=("csv", "json"), default="csv")
    q.add_argument("--out", required=True)
    q.set_defaults(func=cmd_dataset_export)

    p = sub.add_parser("wm", help="world-model numerics", allow_abbrev=False)
    wsub = p.add_subparsers(dest="wm_command", required=True)
    q = wsub.add_parser("coeffs", help="preconditioning coefficients", allow_abbrev=False)
    q.add_argument("--sigma", type=float, action="append", required=True)
    q.add_argument("--sigma-data", type=float, default=1.0)
    q.add_argument("--out")
    q.set_defaults(func=cmd_wm_coeffs)

    q = wsub.add_parser("sample", help="reverse diffusion with the analytic Gaussian denoiser", allow_abbrev=False)
    q.add_argument("--input", help="JSON with optional config, mu, data_std, n, shape ('-' for stdin)")
    q.add_argument("--steps", type=int)
    q.add_argument("--sigma-data", type=float)
    q.add_argument("--sigma-min", type=float)
    q.add_argument("--sigma-max", type=float)
    q.add_argument("--rho", type=float)
    q.add_argument("--s-churn", type=float)
    q.add_argument("--clamp-scale", type=float)
    q.add_argument("--mu", type=float, default=0.0)
    q.add_argument("--data-std", type=float, default=1.0)
    q.add_argument("--shape", help="comma-separated latent shape (default 16,8,8)")
    q.add_argument("--n", type=int, default=1)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--out")
    q.set_defaults(func=cmd_wm_sample)

    q = wsub.add_parser("loss", help="dynamics, reward/termination and actor-critic losses", allow_abbrev=False)
    q.add_argument("--input", required=True)
    q.add_argument("--entropy-weight", type=float, default=0.001)
    q.add_argument("--out")
    q.set_defaults(func=cmd_wm_loss)

    q = wsub.add_parser("returns", help="lambda-returns of a trajectory", allow_abbrev=False)
    q.add_argument("--input", required=True)
    q.add_argument("--gamma", type=float, default=0.985)
    q.add_argument("--lambda", dest="lam", type=float, default=0.95)
    q.add_argument("--out")
    q.set_defaults(func=cmd_wm_returns)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PerfAsymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KeyError, TypeError, ValueError) as exc:
        # malformed JSON payloads that slipped past the typed checks
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
