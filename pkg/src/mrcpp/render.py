"""Deterministic SVG drawings of partitions and coverage paths."""
from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import quoteattr

import numpy as np

from .grid import GridMap
from .stc import LOOP, SPIKE, CoveragePath

CELL = 12

# (region tint, path stroke) per robot, cycled for larger fleets
PALETTE = (
    ("#cfe2f3", "#1f4e79"),
    ("#f4cccc", "#990000"),
    ("#d9ead3", "#274e13"),
    ("#fff2cc", "#7f6000"),
    ("#d9d2e9", "#20124d"),
    ("#fce5cd", "#783f04"),
    ("#d0e0e3", "#0c343d"),
    ("#ead1dc", "#4c1130"),
)


def _centre(cell) -> str:
    return f"{cell[1] * CELL + CELL / 2:g},{cell[0] * CELL + CELL / 2:g}"


def render_svg(grid: GridMap, assignment: np.ndarray | None, paths: Sequence[CoveragePath]) -> str:
    """One rect per subcell, one polyline per robot for its loop, a dashed
    line per spike move and a circle at each start."""
    h, w = grid.height, grid.width
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w * CELL}" height="{h * CELL}" '
        f'viewBox="0 0 {w * CELL} {h * CELL}">',
        '<g stroke="#bbbbbb" stroke-width="0.5">',
    ]
    for r in range(h):
        for c in range(w):
            if grid.occupancy[r, c]:
                fill = "#000000"
            else:
                owner = -1
                if assignment is not None and r // 2 < assignment.shape[0] and c // 2 < assignment.shape[1]:
                    owner = int(assignment[r // 2, c // 2])
                fill = PALETTE[owner % len(PALETTE)][0] if owner >= 0 else "#ffffff"
            out.append(f'<rect x="{c * CELL}" y="{r * CELL}" width="{CELL}" height="{CELL}" fill="{fill}"/>')
    out.append("</g>")
    for p in paths:
        stroke = PALETTE[p.robot % len(PALETTE)][1]
        loop = [m for m, k in zip(p.moves, p.kinds) if k == LOOP]
        points = " ".join(_centre(m) for m in loop)
        out.append(f'<polyline class={quoteattr(f"robot-{p.robot}")} fill="none" stroke="{stroke}" '
                   f'stroke-width="2" points="{points}"/>')
        for a, b, kind in zip(p.moves, p.moves[1:], p.kinds[1:]):
            if kind != SPIKE:
                continue
            (x1, y1), (x2, y2) = (_centre(a).split(","), _centre(b).split(","))
            out.append(f'<line class="spike" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{stroke}" '
                       f'stroke-width="1.5" stroke-dasharray="3,2"/>')
    for i, (r, c) in enumerate(grid.robot_starts):
        stroke = PALETTE[i % len(PALETTE)][1]
        out.append(f'<circle cx="{c * CELL + CELL / 2:g}" cy="{r * CELL + CELL / 2:g}" r="{CELL / 3:g}" '
                   f'fill="{stroke}" stroke="#ffffff" stroke-width="1"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
