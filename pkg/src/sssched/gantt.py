"""SVG 1.1 rendering of solutions, one horizontal lane per processor.

Output bytes are deterministic for identical input: iteration orders are
sorted and every coordinate is written with a fixed format.
"""

from __future__ import annotations

from .model import Instance
from .pipeline import Solution

_PALETTE = [
    "#4e79a7",
    "#f28e2b",
    "#59a14f",
    "#e15759",
    "#b07aa1",
    "#76b7b2",
    "#edc948",
    "#ff9da7",
    "#9c755f",
    "#bab0ac",
]

_MARGIN_LEFT = 64
_MARGIN_RIGHT = 24
_MARGIN_TOP = 28
_MARGIN_BOTTOM = 42
_LANE_HEIGHT = 34
_LANE_GAP = 4


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _proc_runs(procs: tuple[int, ...]) -> list[tuple[int, int]]:
    """Contiguous runs of processor indices, as (first, last) pairs."""
    runs = []
    ordered = sorted(procs)
    start = prev = ordered[0]
    for q in ordered[1:]:
        if q == prev + 1:
            prev = q
            continue
        runs.append((start, prev))
        start = prev = q
    runs.append((start, prev))
    return runs


def render_svg(solution: Solution, instance: Instance | None = None, width: int = 920) -> str:
    """Render the schedule as an SVG document.

    One lane per processor, one rectangle per (segment, contiguous processor
    run), labeled with the job id. With an instance, dashed tick marks show
    the distinct deadlines. An empty schedule renders the axes only.
    """
    entries = sorted(solution.schedule, key=lambda e: e.job_id)
    deadlines = sorted({j.deadline for j in instance.jobs}) if instance is not None else []

    if instance is not None:
        m = instance.m
    elif entries:
        m = 1 + max(max(e.procs) for e in entries if e.procs)
    else:
        m = 0

    t_max = 0.0
    for e in entries:
        for seg in e.segments:
            t_max = max(t_max, seg.end)
    for d in deadlines:
        t_max = max(t_max, d)
    if t_max <= 0:
        t_max = 1.0

    chart_w = width - _MARGIN_LEFT - _MARGIN_RIGHT
    chart_h = max(m, 0) * (_LANE_HEIGHT + _LANE_GAP)
    height = _MARGIN_TOP + chart_h + _MARGIN_BOTTOM

    def x_of(t: float) -> float:
        return _MARGIN_LEFT + t / t_max * chart_w

    def lane_y(q: int) -> float:
        return _MARGIN_TOP + q * (_LANE_HEIGHT + _LANE_GAP)

    colors = {e.job_id: _PALETTE[k % len(_PALETTE)] for k, e in enumerate(entries)}

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]

    for q in range(m):
        y = lane_y(q)
        parts.append(
            f'<rect x="{_fmt(_MARGIN_LEFT)}" y="{_fmt(y)}" width="{_fmt(chart_w)}" '
            f'height="{_LANE_HEIGHT}" fill="{"#f4f4f4" if q % 2 else "#ececec"}"/>'
        )
        parts.append(
            f'<text x="{_fmt(_MARGIN_LEFT - 8)}" y="{_fmt(y + _LANE_HEIGHT / 2 + 4)}" '
            f'text-anchor="end">p{q}</text>'
        )

    for e in entries:
        if not e.procs:
            continue
        color = colors[e.job_id]
        for seg in e.segments:
            x0, x1 = x_of(seg.start), x_of(seg.end)
            first = True
            for run_a, run_b in _proc_runs(e.procs):
                y0 = lane_y(run_a)
                h = lane_y(run_b) + _LANE_HEIGHT - y0
                parts.append(
                    f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" width="{_fmt(x1 - x0)}" height="{_fmt(h)}" '
                    f'fill="{color}" stroke="#333333" stroke-width="0.5"/>'
                )
                if first:
                    parts.append(
                        f'<text x="{_fmt(x0 + 3)}" y="{_fmt(y0 + 13)}" fill="#ffffff">J{e.job_id}</text>'
                    )
                    first = False

    axis_y = _MARGIN_TOP + chart_h
    parts.append(
        f'<line x1="{_fmt(_MARGIN_LEFT)}" y1="{_fmt(axis_y)}" x2="{_fmt(_MARGIN_LEFT + chart_w)}" '
        f'y2="{_fmt(axis_y)}" stroke="#000000"/>'
    )
    parts.append(
        f'<line x1="{_fmt(_MARGIN_LEFT)}" y1="{_fmt(_MARGIN_TOP)}" x2="{_fmt(_MARGIN_LEFT)}" '
        f'y2="{_fmt(axis_y)}" stroke="#000000"/>'
    )
    for t, label in [(0.0, "0"), (t_max, f"{t_max:g}")]:
        x = x_of(t)
        parts.append(f'<line x1="{_fmt(x)}" y1="{_fmt(axis_y)}" x2="{_fmt(x)}" y2="{_fmt(axis_y + 5)}" stroke="#000000"/>')
        parts.append(f'<text x="{_fmt(x)}" y="{_fmt(axis_y + 17)}" text-anchor="middle">{label}</text>')

    for d in deadlines:
        x = x_of(d)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(_MARGIN_TOP)}" x2="{_fmt(x)}" y2="{_fmt(axis_y)}" '
            f'stroke="#c03030" stroke-width="1" stroke-dasharray="4,3"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(axis_y + 30)}" text-anchor="middle" fill="#c03030">d={d:g}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
