"""JSON run reports.

Besides the summary fields, a report stores the map rows, the mega-cell
assignment and each path's spike flags, so an SVG can be rebuilt from the
report alone.
"""
from __future__ import annotations

import json

import numpy as np

from .grid import GridMap, MapParseError
from .pipeline import Plan
from .stc import LOOP, SPIKE, CoveragePath

KIND_CODES = {LOOP: "L", SPIKE: "S"}
CODE_KINDS = {v: k for k, v in KIND_CODES.items()}


def _cells(cells) -> list:
    return [[int(r), int(c)] for r, c in cells]


def plan_to_report(p: Plan) -> dict:
    part, rep = p.partition, p.report
    robots = []
    for i, (path, m) in enumerate(zip(p.paths, p.metrics)):
        robots.append({
            "id": i,
            "start": list(p.grid.robot_starts[i]),
            "n_moves": m.n_moves,
            "straight": m.straight,
            "turns": m.turns,
            "time": m.time,
            "path": _cells(path.moves),
            "kinds": "".join(KIND_CODES[k] for k in path.kinds),
        })
    return {
        "map": {
            "height": p.grid.height,
            "width": p.grid.width,
            "obstacle_ratio": p.grid.obstacle_ratio(),
            "rows": ["".join("#" if x else "." for x in row) for row in p.grid.occupancy],
            "starts": _cells(p.grid.robot_starts),
        },
        "config": {
            "mode": p.mode,
            "coverage": p.coverage,
            "eta": p.darp.eta,
            "gamma": p.darp.gamma,
            "max_iter": p.darp.max_iter,
            "t_s": p.time_model.t_s,
            "t_t": p.time_model.t_t,
        },
        "partition": {
            "sizes": list(part.region_sizes),
            "J": part.final_J,
            "iterations": part.iterations,
            "converged": part.converged,
            "excluded": _cells(sorted(part.excluded_cells)),
            "assignment": part.assignment.tolist(),
        },
        "robots": robots,
        "fleet": {
            "max": rep.max,
            "min": rep.min,
            "ave": rep.ave,
            "ratio": rep.ratio,
            "coverage_rate": rep.coverage_rate,
            "uncovered": _cells(rep.uncovered),
        },
    }


def dumps(report: dict) -> str:
    return json.dumps(report, separators=(",", ":"), allow_nan=False) + "\n"


def loads(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MapParseError(f"invalid report JSON: {exc.msg}", line=exc.lineno, col=exc.colno) from None
    for key in ("map", "partition", "robots", "fleet"):
        if key not in data:
            raise MapParseError(f"report is missing the {key!r} section")
    return data


def report_grid(report: dict) -> GridMap:
    try:
        rows = report["map"]["rows"]
        occ = np.array([[ch == "#" for ch in row] for row in rows], dtype=bool)
        starts = tuple((int(r), int(c)) for r, c in report["map"]["starts"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MapParseError(f"report has no usable map section: {exc}") from None
    return GridMap(occ, starts)


def report_paths(report: dict) -> list[CoveragePath]:
    out = []
    for r in report["robots"]:
        moves = tuple((int(a), int(b)) for a, b in r["path"])
        codes = r.get("kinds") or "L" * len(moves)
        out.append(CoveragePath(int(r["id"]), moves, tuple(CODE_KINDS[ch] for ch in codes)))
    return out
