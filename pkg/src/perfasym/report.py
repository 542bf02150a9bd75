"""Render aggregate reports and performance profiles as Markdown, CSV, JSON or SVG.

SVG output is written by hand so that it is byte-stable across platforms.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import List, Mapping, Sequence, Tuple
from xml.sax.saxutils import escape

from .aggregates import AggregateReport
from .exceptions import ParseError, ValidationError

WIDTH, HEIGHT, MARGIN = 800, 500, 10
# plot area inside the margins, leaving room for tick labels, title and legend
PLOT_LEFT, PLOT_RIGHT, PLOT_TOP, PLOT_BOTTOM = MARGIN + 60, WIDTH - MARGIN - 130, MARGIN + 30, HEIGHT - MARGIN - 50
PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22")

FORMATS = ("md", "csv", "json", "svg")


def _columns(reports: Sequence[AggregateReport]):
    metrics = list(dict.fromkeys(k for r in reports for k in r.metrics))
    intervals = list(dict.fromkeys(k for r in reports for k in (r.intervals or {})))
    return metrics, intervals


def _num(x):
    if isinstance(x, bool) or x is None:
        return "" if x is None else str(x)
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def render(reports: Sequence[AggregateReport], format: str = "md") -> str:
    if not reports:
        raise ValidationError("nothing to render: empty report list")
    if format == "json":
        return json.dumps([r.to_dict() for r in reports], indent=1) + "\n"
    metrics, intervals = _columns(reports)
    header = ["method", *metrics]
    for k in intervals:
        header += [f"{k}_low", f"{k}_high", f"{k}_level"]
    rows = []
    for r in reports:
        row = [r.method] + [_num(r.metrics.get(k)) for k in metrics]
        for k in intervals:
            iv = (r.intervals or {}).get(k)
            row += [_num(v) for v in iv] if iv else ["", "", ""]
        rows.append(row)
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    if format == "md":
        lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
        lines += ["| " + " | ".join(row) + " |" for row in rows]
        return "\n".join(lines) + "\n"
    if format == "svg":
        return bar_chart_svg(
            {r.method: {k: float(v) for k, v in r.metrics.items()} for r in reports},
            title="Aggregate metrics",
        )
    raise ValidationError(f"unsupported format: {format!r} (choose from {', '.join(FORMATS)})")


def parse_reports(text: str, format: str = "json") -> List[AggregateReport]:
    """Inverse of :func:`render` for the ``json`` and ``csv`` formats."""
    if format == "json":
        try:
            return [AggregateReport.from_dict(d) for d in json.loads(text)]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"malformed report JSON: {exc}") from exc
    if format == "csv":
        rows = list(csv.reader(io.StringIO(text)))
        header, body = rows[0], rows[1:]
        ivs = [h[:-4] for h in header if h.endswith("_low")]
        metric_cols = [h for h in header[1:] if not any(h in (f"{k}_low", f"{k}_high", f"{k}_level") for k in ivs)]
        out = []
        for row in body:
            rec = dict(zip(header, row))
            metrics = {k: (int(rec[k]) if rec[k].lstrip("-").isdigit() else float(rec[k])) for k in metric_cols if rec[k] != ""}
            intervals = {
                k: (float(rec[f"{k}_low"]), float(rec[f"{k}_high"]), float(rec[f"{k}_level"]))
                for k in ivs if rec[f"{k}_low"] != ""
            }
            out.append(AggregateReport(rec["method"], metrics, intervals or None))
        return out
    raise ParseError(f"unsupported format: {format!r}")


# -- SVG ----------------------------------------------------------------------


def _nice_ceiling(x):
    if x <= 0:
        return 1.0
    exp = 10 ** math.floor(math.log10(x))
    for m in (1, 2, 2.5, 5, 10):
        if m * exp >= x:
            return m * exp
    return 10 * exp


def _ticks(lo, hi, n=5):
    return [lo + (hi - lo) * i / n for i in range(n + 1)]


def _fmt_tick(v):
    return f"{v:.4g}"


class _Axes:
    def __init__(self, xlo, xhi, ylo, yhi):
        self.xlo, self.xhi, self.ylo, self.yhi = xlo, xhi, ylo, yhi

    def x(self, v):
        return PLOT_LEFT + (v - self.xlo) / (self.xhi - self.xlo) * (PLOT_RIGHT - PLOT_LEFT)

    def y(self, v):
        return PLOT_BOTTOM - (v - self.ylo) / (self.yhi - self.ylo) * (PLOT_BOTTOM - PLOT_TOP)


def _open(title, xlabel, ylabel):
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="{MARGIN + 15}" text-anchor="middle" font-size="16">{escape(title)}</text>',
        f'<text x="{(PLOT_LEFT + PLOT_RIGHT) / 2:.1f}" y="{HEIGHT - MARGIN - 5}" text-anchor="middle" font-size="13">{escape(xlabel)}</text>',
        f'<text x="{MARGIN + 12}" y="{(PLOT_TOP + PLOT_BOTTOM) / 2:.1f}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 {MARGIN + 12} {(PLOT_TOP + PLOT_BOTTOM) / 2:.1f})">{escape(ylabel)}</text>',
    ]


def _y_axis(ax, yticks):
    out = [f'<line x1="{PLOT_LEFT}" y1="{PLOT_TOP}" x2="{PLOT_LEFT}" y2="{PLOT_BOTTOM}" stroke="black"/>']
    for t in yticks:
        y = ax.y(t)
        out.append(f'<line x1="{PLOT_LEFT - 4}" y1="{y:.2f}" x2="{PLOT_LEFT}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{PLOT_LEFT - 6}" y="{y + 4:.2f}" text-anchor="end" font-size="11">{_fmt_tick(t)}</text>')
    return out


def _legend(names):
    out = []
    for i, name in enumerate(names):
        y = PLOT_TOP + 18 * i
        out.append(f'<rect x="{PLOT_RIGHT + 15}" y="{y}" width="12" height="12" fill="{PALETTE[i % len(PALETTE)]}"/>')
        out.append(f'<text x="{PLOT_RIGHT + 32}" y="{y + 10}" font-size="12">{escape(name)}</text>')
    return out


def bar_chart_svg(values: Mapping[str, Mapping[str, float]], title="", ylabel="value") -> str:
    """Grouped bars: one group per metric (x axis), one bar per method."""
    methods = list(values)
    groups = list(dict.fromkeys(k for v in values.values() for k in v))
    if not methods or not groups:
        raise ValidationError("bar chart needs at least one method and one metric")
    all_vals = [v[g] for v in values.values() for g in groups if g in v]
    ylo = min(0.0, -_nice_ceiling(-min(all_vals)) if min(all_vals) < 0 else 0.0)
    yhi = _nice_ceiling(max(max(all_vals), 0.0))
    ax = _Axes(0, len(groups), ylo, yhi)
    out = _open(title, "metric", ylabel) + _y_axis(ax, _ticks(ylo, yhi))
    out.append(f'<line x1="{PLOT_LEFT}" y1="{ax.y(0):.2f}" x2="{PLOT_RIGHT}" y2="{ax.y(0):.2f}" stroke="black"/>')
    slot = 0.8 / len(methods)
    for gi, g in enumerate(groups):
        out.append(
            f'<text x="{ax.x(gi + 0.5):.2f}" y="{PLOT_BOTTOM + 16}" text-anchor="middle" font-size="11">{escape(g)}</text>'
        )
        for mi, m in enumerate(methods):
            if g not in values[m]:
                continue
            v = values[m][g]
            x0, x1 = ax.x(gi + 0.1 + mi * slot), ax.x(gi + 0.1 + (mi + 1) * slot)
            top, bottom = sorted((ax.y(v), ax.y(0)))
            out.append(
                f'<rect x="{x0:.2f}" y="{top:.2f}" width="{x1 - x0:.2f}" height="{bottom - top:.2f}" '
                f'fill="{PALETTE[mi % len(PALETTE)]}"><title>{escape(m)} {escape(g)}: {v:.6g}</title></rect>'
            )
    out += _legend(methods)
    out.append("</svg>")
    return "\n".join(out) + "\n"


def profile_svg(profiles: Mapping[str, Sequence[Tuple[float, float]]], title="Performance profile") -> str:
    """Line chart with one polyline per method, one vertex per tau."""
    if not profiles:
        raise ValidationError("no profiles to plot")
    taus = [t for p in profiles.values() for t, _ in p]
    xlo, xhi = min(taus), max(taus)
    if xhi == xlo:
        xhi = xlo + 1.0
    ax = _Axes(xlo, xhi, 0.0, 1.0)
    out = _open(title, "normalized score threshold (tau)", "fraction of runs > tau") + _y_axis(ax, _ticks(0.0, 1.0))
    out.append(f'<line x1="{PLOT_LEFT}" y1="{PLOT_BOTTOM}" x2="{PLOT_RIGHT}" y2="{PLOT_BOTTOM}" stroke="black"/>')
    for t in _ticks(xlo, xhi):
        x = ax.x(t)
        out.append(f'<line x1="{x:.2f}" y1="{PLOT_BOTTOM}" x2="{x:.2f}" y2="{PLOT_BOTTOM + 4}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{PLOT_BOTTOM + 16}" text-anchor="middle" font-size="11">{_fmt_tick(t)}</text>')
    for i, (name, prof) in enumerate(profiles.items()):
        pts = " ".join(f"{ax.x(t):.2f},{ax.y(f):.2f}" for t, f in prof)
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="{PALETTE[i % len(PALETTE)]}" stroke-width="2">'
            f"<title>{escape(name)}</title></polyline>"
        )
    out += _legend(list(profiles))
    out.append("</svg>")
    return "\n".join(out) + "\n"
