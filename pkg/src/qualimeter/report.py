"""Deterministic report emission: Kiviat SVG, treemap SVG, comparison tables.

All emitters use stable ordering and fixed numeric formatting (4 decimal
places, half-up) so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
import math
from decimal import ROUND_HALF_UP, Decimal

from .maintain import (
    CRITERIA,
    LEVELS,
    METRIC_ORDER,
    DEFAULT_PROFILE,
    LogiscopeMetrics,
    ThresholdProfile,
    bad_fraction,
    kiviat_status,
    ranking_matrix,
)
from .treemap import CellLayout, convex_hull, leaf_cells

SCHEMA_VERSION = 1


def fmt(value) -> str:
    """Fixed formatting: reals to 4 decimals half-up; None -> 'undefined'."""
    if value is None:
        return "undefined"
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isinf(value):
            return "+inf" if value > 0 else "-inf"
        return str(Decimal(repr(value)).quantize(Decimal("0.0001"),
                                                 rounding=ROUND_HALF_UP))
    return str(value)


def _write(out, text: str) -> None:
    if hasattr(out, "write"):
        out.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def write_json(doc: dict, out) -> None:
    doc = {"schemaVersion": SCHEMA_VERSION, **doc}
    _write(out, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def write_csv(header: list[str], rows: list[list], out) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    _write(out, buf.getvalue())


# ---------------------------------------------------------------------------
# Kiviat SVG


_KIVIAT_SIZE = 640
_KIVIAT_CX = 260
_KIVIAT_CY = 260
_KIVIAT_R = 200


def _axis_position(metrics: LogiscopeMetrics, metric: str,
                   profile: ThresholdProfile) -> float:
    """Radial position in [0.05, 1]: 0.75 marks the band edge."""
    lo, hi = profile.range_for(metric)
    value = getattr(metrics, metric)
    if hi == math.inf:
        scale = 2 * lo if lo not in (0, -math.inf) else max(abs(value), 1.0)
    else:
        scale = hi if hi > 0 else 1.0
    pos = 0.75 * value / scale if scale else 0.0
    return min(max(pos, 0.05), 1.0)


def emit_kiviat_svg(metrics: LogiscopeMetrics, out,
                    profile: ThresholdProfile = DEFAULT_PROFILE,
                    title: str = "") -> dict[str, int]:
    """13-axis radar with the acceptable band ring; alert styling follows
    the -1 statuses. Returns the status map."""
    statuses = kiviat_status(metrics, profile)
    n = len(METRIC_ORDER)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_KIVIAT_SIZE}" '
        f'height="{_KIVIAT_SIZE}" viewBox="0 0 {_KIVIAT_SIZE} {_KIVIAT_SIZE}">',
        f'<title>{title or "kiviat"}</title>',
        f'<circle cx="{_KIVIAT_CX}" cy="{_KIVIAT_CY}" r="{_KIVIAT_R}" '
        'fill="none" stroke="#cccccc"/>',
        # band ring: values drawn at 0.75R sit exactly on their max threshold
        f'<circle cx="{_KIVIAT_CX}" cy="{_KIVIAT_CY}" r="{0.75 * _KIVIAT_R}" '
        'fill="none" stroke="#88aa88" stroke-dasharray="4 3"/>',
    ]
    points = []
    for i, metric in enumerate(METRIC_ORDER):
        angle = 2 * math.pi * i / n - math.pi / 2
        alert = statuses[metric] == -1
        tip_x = _KIVIAT_CX + _KIVIAT_R * math.cos(angle)
        tip_y = _KIVIAT_CY + _KIVIAT_R * math.sin(angle)
        stroke = "#cc2222" if alert else "#888888"
        width = 3 if alert else 1
        css = "axis alert" if alert else "axis"
        lines.append(
            f'<line class="{css}" x1="{_KIVIAT_CX}" y1="{_KIVIAT_CY}" '
            f'x2="{fmt(tip_x)}" y2="{fmt(tip_y)}" stroke="{stroke}" '
            f'stroke-width="{width}"/>')
        label_x = _KIVIAT_CX + (_KIVIAT_R + 12) * math.cos(angle)
        label_y = _KIVIAT_CY + (_KIVIAT_R + 12) * math.sin(angle)
        fill = "#cc2222" if alert else "#333333"
        lines.append(
            f'<text x="{fmt(label_x)}" y="{fmt(label_y)}" font-size="9" '
            f'fill="{fill}" text-anchor="middle">{metric}</text>')
        pos = _axis_position(metrics, metric, profile)
        points.append((
            _KIVIAT_CX + pos * _KIVIAT_R * math.cos(angle),
            _KIVIAT_CY + pos * _KIVIAT_R * math.sin(angle),
        ))
    polygon = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in points)
    lines.append(f'<polygon points="{polygon}" fill="#3366cc" '
                 'fill-opacity="0.35" stroke="#3366cc"/>')

    # embedded value table
    table_x = _KIVIAT_SIZE - 115
    lines.append(f'<text x="{table_x}" y="24" font-size="10" '
                 'font-weight="bold">metric value status</text>')
    for i, metric in enumerate(METRIC_ORDER):
        value = getattr(metrics, metric)
        lines.append(
            f'<text x="{table_x}" y="{40 + 14 * i}" font-size="10">'
            f'{metric} {fmt(float(value))} {statuses[metric]}</text>')
    lines.append("</svg>")
    _write(out, "\n".join(lines) + "\n")
    return statuses


# ---------------------------------------------------------------------------
# Treemap SVG


_PALETTE = ("#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
            "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac")


def emit_treemap_svg(layout: CellLayout, out, width: float, height: float) -> None:
    """Nested polygon outlines (convex hulls of cell samples), labels scaled
    by cell weight."""
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(width)}" '
        f'height="{fmt(height)}" viewBox="0 0 {fmt(width)} {fmt(height)}">',
    ]

    def emit(cell: CellLayout, depth: int, index: int) -> None:
        if len(cell.samples) >= 3:
            hull = convex_hull(cell.samples)
            pts = " ".join(f"{fmt(float(x))},{fmt(float(y))}" for x, y in hull)
            if cell.children:
                lines.append(f'<polygon points="{pts}" fill="none" '
                             f'stroke="#222222" stroke-width="{max(3 - depth, 1)}"/>')
            else:
                color = _PALETTE[index % len(_PALETTE)]
                lines.append(f'<polygon points="{pts}" fill="{color}" '
                             'fill-opacity="0.6" stroke="#444444"/>')
                size = max(6.0, 28.0 * math.sqrt(cell.area_fraction))
                lines.append(
                    f'<text x="{fmt(cell.site.x)}" y="{fmt(cell.site.y)}" '
                    f'font-size="{fmt(size)}" text-anchor="middle">'
                    f'{cell.name}</text>')
        for i, child in enumerate(cell.children):
            emit(child, depth + 1, index + i)

    emit(layout, 0, 0)
    lines.append("</svg>")
    _write(out, "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# comparison report


def emit_comparison_report(dist_a: dict, dist_b: dict, name_a: str, name_b: str,
                           json_out, csv_out) -> dict:
    """Per-level percentage tables, bad-quality aggregates, ranking matrix."""
    matrix = ranking_matrix(dist_a, dist_b)
    rows = []
    order = list(CRITERIA) + ["maintainability"]
    for criterion in order:
        for level in LEVELS:
            rows.append([criterion, level,
                         dist_a[criterion][level], dist_b[criterion][level]])
    doc = {
        "designs": [name_a, name_b],
        "distributions": {name_a: dist_a, name_b: dist_b},
        "badQuality": {
            name_a: {c: bad_fraction(dist_a[c]) for c in order},
            name_b: {c: bad_fraction(dist_b[c]) for c in order},
        },
        "rankingMatrix": {
            c: {name_a: matrix[c][0], name_b: matrix[c][1]} for c in order
        },
    }
    if json_out is not None:
        write_json(doc, json_out)
    if csv_out is not None:
        write_csv(["criterion", "level", name_a, name_b], rows, csv_out)
    return doc
