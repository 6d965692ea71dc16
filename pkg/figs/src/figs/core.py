"""Summaries and error-bar plots over experiment CSV files.

This package is a strict CSV consumer: it never recomputes graph quantities,
only aggregates what the harness wrote.  Series are aggregated per x value as
mean and sample standard deviation over trials.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path


class FigsError(ValueError):
    """Bad input: unreadable CSV, missing fields, or empty data."""


def read_rows(csv_path: str) -> tuple[list[str], list[dict[str, str]]]:
    """Read a harness CSV, skipping '#' metadata lines; returns (header, rows)."""
    path = Path(csv_path)
    if not path.exists():
        raise FigsError(f"no such CSV file: {csv_path}")
    lines = [
        line for line in path.read_text(encoding="utf-8").splitlines()
        if line and not line.startswith("#")
    ]
    if not lines:
        raise FigsError(f"CSV {csv_path} has no header row")
    reader = csv.reader(lines)
    header = next(reader)
    rows = [dict(zip(header, record)) for record in reader]
    if not rows:
        raise FigsError(f"CSV {csv_path} has no data rows")
    return header, rows


def _numeric(value: str) -> float | None:
    if value is None or value == "":
        return None
    return float(value)


def _mean_std(values: list[float]) -> tuple[float, float]:
    n = len(values)
    mean = sum(values) / n
    if n < 2:
        return mean, 0.0
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var)


_GROUP_FIELDS = (
    "family",
    "param_d",
    "param_m",
    "param_n",
    "param_p",
    "param_q",
    "param_depth",
    "param_k",
    "param_periodic",
)


def summarize(csv_path: str) -> list[dict]:
    """Per-parameter-point mean and sample standard deviation of every metric.

    Rows are grouped by the family and parameter columns; each group yields
    one summary record with ``<field>_mean`` / ``<field>_std`` entries for
    every numeric field that is populated in the group.
    """
    header, rows = read_rows(csv_path)
    group_fields = [f for f in _GROUP_FIELDS if f in header]
    metric_fields = [
        f for f in header
        if f not in group_fields and f not in ("seed", "trial")
    ]
    groups: dict[tuple, list[dict]] = {}
    order: list[tuple] = []
    for row in rows:
        key = tuple(row[f] for f in group_fields)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(row)
    summaries = []
    for key in order:
        record: dict = dict(zip(group_fields, key))
        record["trials"] = len(groups[key])
        for metric in metric_fields:
            values = [
                _numeric(row[metric]) for row in groups[key] if row[metric] != ""
            ]
            values = [v for v in values if v is not None]
            if not values:
                continue
            mean, std = _mean_std(values)
            record[f"{metric}_mean"] = mean
            record[f"{metric}_std"] = std
        summaries.append(record)
    return summaries


def format_summary_table(summaries: list[dict]) -> str:
    """Deterministic plain-text table of the summary records."""
    keys: list[str] = []
    for record in summaries:
        for key in record:
            if key not in keys:
                keys.append(key)
    lines = ["\t".join(keys)]
    for record in summaries:
        cells = []
        for key in keys:
            value = record.get(key, "")
            cells.append(f"{value:.12g}" if isinstance(value, float) else str(value))
        lines.append("\t".join(cells))
    return "\n".join(lines)


@dataclass(frozen=True)
class FigureSpec:
    """What to plot: CSV source, x-axis field, series, output image path."""

    csv: str
    x: str
    series: tuple[str, ...]
    out: str
    inset: tuple[str, ...] = field(default_factory=tuple)


def _series_data(header, rows, x_field, fields):
    if x_field not in header:
        raise FigsError(f"x-axis field {x_field!r} not in CSV header")
    for name in fields:
        if name not in header:
            raise FigsError(f"series field {name!r} not in CSV header")
    x_values = []
    for row in rows:
        x = _numeric(row[x_field])
        if x is None:
            raise FigsError(f"row with empty x value in field {x_field!r}")
        if x not in x_values:
            x_values.append(x)
    x_values.sort()
    data = {}
    for name in fields:
        means, stds, counts = [], [], []
        for x in x_values:
            values = [
                _numeric(row[name])
                for row in rows
                if _numeric(row[x_field]) == x and row[name] != ""
            ]
            values = [v for v in values if v is not None]
            if values:
                mean, std = _mean_std(values)
            else:
                mean, std = math.nan, math.nan
            means.append(mean)
            stds.append(std)
            counts.append(len(values))
        data[name] = {"x": x_values, "mean": means, "std": stds, "count": counts}
    return data


def render(spec: FigureSpec) -> dict:
    """Render a line-plus-errorbar plot; returns the aggregated series.

    The returned structure is a pure function of (CSV content, spec): two
    renders of the same inputs produce identical series, whatever the image
    backend does with metadata.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    header, rows = read_rows(spec.csv)
    data = _series_data(header, rows, spec.x, tuple(spec.series) + tuple(spec.inset))

    fig, ax = plt.subplots(figsize=(7, 5))
    for name in spec.series:
        series = data[name]
        if max(series["count"]) > 1:
            ax.errorbar(series["x"], series["mean"], yerr=series["std"],
                        marker="o", capsize=3, label=name)
        else:
            ax.plot(series["x"], series["mean"], marker="o", label=name)
    ax.set_xlabel(spec.x)
    ax.set_ylabel("congestion / bound value")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    if spec.inset:
        inset_ax = ax.inset_axes([0.55, 0.08, 0.4, 0.35])
        for name in spec.inset:
            series = data[name]
            inset_ax.errorbar(series["x"], series["mean"], yerr=series["std"],
                              marker=".", capsize=2, label=name)
        inset_ax.tick_params(labelsize=6)
        inset_ax.legend(fontsize=6)
    fig.tight_layout()
    fig.savefig(spec.out, dpi=120)
    plt.close(fig)
    return data
