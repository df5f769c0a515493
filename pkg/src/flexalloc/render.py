"""Gantt-style pictures of solutions: time runs right, colors run up."""
from __future__ import annotations

from xml.sax.saxutils import escape

from .model import BandwidthAllocation, ContiguousColoring, Instance

_GLYPHS = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
FBAP_NOTICE = "note: fbap allocation has no color positions; amounts are stacked per time in id order"
CELL = 10


def glyph(job_id: int) -> str:
    return _GLYPHS[job_id % len(_GLYPHS)]


def cell_grid(inst: Instance, sol) -> dict:
    """``{(t, color): job_id}`` for every occupied unit cell."""
    cells = {}
    if isinstance(sol, ContiguousColoring):
        for j in inst.jobs:
            for c in sol.colors(j.id):
                for t in range(j.start, j.end):
                    cells[t, c] = j.id
        return cells
    if not isinstance(sol, BandwidthAllocation):
        raise TypeError(f"cannot render {type(sol).__name__}")
    horizon = max((j.end for j in inst.jobs), default=0)
    for t in range(horizon):
        c = 1
        for j in sorted(inst.jobs, key=lambda j: j.id):
            if j.start <= t < j.end:
                for _ in range(sol.get(j.id)):
                    cells[t, c] = j.id
                    c += 1
    return cells


def render_ascii(inst: Instance, sol) -> str:
    W = inst.capacity
    horizon = max((j.end for j in inst.jobs), default=0)
    cells = cell_grid(inst, sol)
    width = len(str(W))
    lines = []
    if isinstance(sol, BandwidthAllocation):
        lines.append(FBAP_NOTICE)
    for c in range(W, 0, -1):
        row = "".join(glyph(cells[t, c]) if (t, c) in cells else "." for t in range(horizon))
        lines.append(f"{c:>{width}} |{row}")
    lines.append(" " * width + " +" + "-" * horizon)
    lines.append(" " * (width + 2) + "".join(str(t % 10) for t in range(horizon)))
    return "\n".join(lines) + "\n"


def _boxes(inst: Instance, sol):
    """(t0, t1, first_color, n_colors, job_id) rectangles."""
    if isinstance(sol, ContiguousColoring):
        for j in inst.jobs:
            b = sol.blocks.get(j.id)
            if b:
                yield j.start, j.end, b[0], b[1], j.id
        return
    for (t, c), i in sorted(cell_grid(inst, sol).items()):
        yield t, t + 1, c, 1, i


def render_svg(inst: Instance, sol) -> str:
    W = inst.capacity
    horizon = max((j.end for j in inst.jobs), default=0)
    w, h = horizon * CELL, W * CELL
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
           f'viewBox="0 0 {w} {h}">',
           f'<rect x="0" y="0" width="{w}" height="{h}" fill="white" stroke="black"/>']
    if isinstance(sol, BandwidthAllocation):
        out.append(f"<!-- {escape(FBAP_NOTICE)} -->")
    for t0, t1, first, n, i in _boxes(inst, sol):
        x = t0 * CELL
        y = (W - (first + n - 1)) * CELL
        hue = (i * 47) % 360
        out.append(f'<rect x="{x}" y="{y}" width="{(t1 - t0) * CELL}" height="{n * CELL}" '
                   f'fill="hsl({hue},60%,75%)" stroke="black" stroke-width="0.5"/>')
        out.append(f'<text x="{x + 2}" y="{y + CELL - 2}" font-size="8">{i}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
