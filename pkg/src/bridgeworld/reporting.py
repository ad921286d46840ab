"""CSV telemetry/summary writers and a dependency-free SVG trend chart."""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Sequence, Union

from .experiment import SummaryRow, TelemetryRow

TELEMETRY_COLUMNS = (
    "iteration",
    "deaths_total",
    "deaths_starved",
    "deaths_drowned",
    "mean_courage",
    "mean_generosity",
    "mean_honesty",
    "death_rate",
    "death_rate_plot",
)
SUMMARY_COLUMNS = ("condition", "repeats", "mean_death_rate", "sd_death_rate", "base_seed")

SERIES = (
    ("mean_courage", "#1f77b4"),
    ("mean_generosity", "#2ca02c"),
    ("mean_honesty", "#9467bd"),
    ("death_rate_plot", "#d62728"),
)


def fmt(x: float) -> str:
    """Six decimals. Python rounds the exact binary value half-to-even."""
    return f"{x:.6f}"


def telemetry_csv(rows: Sequence[TelemetryRow]) -> str:
    if not rows:
        raise ValueError("no telemetry rows to write")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TELEMETRY_COLUMNS)
    for r in rows:
        w.writerow([
            r.iteration, r.deaths_total, r.deaths_starved, r.deaths_drowned,
            fmt(r.mean_courage), fmt(r.mean_generosity), fmt(r.mean_honesty),
            fmt(r.death_rate), fmt(r.death_rate_plot),
        ])
    return buf.getvalue()


def summary_csv(rows: Sequence[SummaryRow]) -> str:
    if not rows:
        raise ValueError("no summary rows to write")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_COLUMNS)
    for r in rows:
        sd = "" if r.sd_death_rate is None else fmt(r.sd_death_rate)
        w.writerow([r.condition.value, r.repeats, fmt(r.mean_death_rate), sd, r.base_seed])
    return buf.getvalue()


def _write(path: Union[str, Path], text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def write_telemetry_csv(rows: Sequence[TelemetryRow], path: Union[str, Path]) -> None:
    _write(path, telemetry_csv(rows))


def write_summary_csv(rows: Sequence[SummaryRow], path: Union[str, Path]) -> None:
    _write(path, summary_csv(rows))


def svg_chart(rows: Sequence[TelemetryRow], title: str = "", width: int = 800, height: int = 400) -> str:
    """Line chart of mean virtues and scaled death rate against iteration.

    The y-axis is fixed to [-1, 1]; values outside it are drawn on the border.
    """
    if len(rows) < 2:
        raise ValueError("need at least 2 telemetry rows to draw a chart")
    left, right, top, bottom = 50, 170, 30, 40
    plot_w = width - left - right
    plot_h = height - top - bottom
    x0, x1 = rows[0].iteration, rows[-1].iteration
    span = (x1 - x0) or 1

    def px(it: int) -> float:
        return left + (it - x0) / span * plot_w

    def py(v: float) -> float:
        v = max(-1.0, min(1.0, v))
        return top + (1.0 - v) / 2.0 * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{left}" y="18" font-size="13">{_escape(title)}</text>')
    out.append(
        f'<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#444"/>'
    )
    for tick in (-1.0, -0.5, 0.0, 0.5, 1.0):
        y = py(tick)
        out.append(
            f'<line x1="{left}" y1="{y:.2f}" x2="{left + plot_w}" y2="{y:.2f}" '
            f'stroke="#ddd" stroke-width="0.5"/>'
        )
        out.append(f'<text x="{left - 6}" y="{y + 4:.2f}" text-anchor="end">{tick:g}</text>')
    out.append(f'<text x="{left}" y="{height - 12}">{x0}</text>')
    out.append(f'<text x="{left + plot_w}" y="{height - 12}" text-anchor="end">{x1}</text>')
    out.append(
        f'<text x="{left + plot_w / 2:.2f}" y="{height - 12}" text-anchor="middle">iteration</text>'
    )

    for k, (name, color) in enumerate(SERIES):
        points = " ".join(f"{px(r.iteration):.2f},{py(getattr(r, name)):.2f}" for r in rows)
        out.append(
            f'<polyline data-series="{name}" fill="none" stroke="{color}" '
            f'stroke-width="1.2" points="{points}"/>'
        )
        ly = top + 14 + 18 * k
        lx = left + plot_w + 12
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 20}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 26}" y="{ly}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_svg(rows: Sequence[TelemetryRow], path: Union[str, Path], title: str = "") -> None:
    _write(path, svg_chart(rows, title))
