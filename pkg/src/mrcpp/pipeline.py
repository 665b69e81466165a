"""End-to-end planning: partition, per-robot STC loop, optional UF spikes, scores."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _accel
from .darp import DarpConfig, PartitionResult, partition
from .grid import GridMap, MegaGrid, build_mega, small_cells
from .metrics import RunReport, TimeModel, fleet_report, score_path
from .stc import stc_path
from .uf import plan_fleet_uf

# CLI names -> seeding modes
MODE_NAMES = {"darp": "euclidean", "astar-darp": "astar"}
COVERAGES = ("stc", "uf-stc")


@dataclass(frozen=True, eq=False)
class Plan:
    grid: GridMap
    mega: MegaGrid
    mode: str
    coverage: str
    darp: DarpConfig
    time_model: TimeModel
    partition: PartitionResult
    loops: tuple  # plain STC loops
    paths: tuple  # what the robots drive (loops, or loops with spikes)
    metrics: tuple
    report: RunReport


def _start_component(part: PartitionResult, robot: int, start) -> list:
    # a non-converged partition can leave fragments; only the start-connected
    # part can be circumnavigated
    own = np.ascontiguousarray(part.assignment == robot)
    comp = _accel.component_mask(own, start[0], start[1])
    return [(int(r), int(c)) for r, c in np.argwhere(comp)]


def plan(grid: GridMap, mode: str = "astar-darp", coverage: str = "stc",
         darp: DarpConfig | None = None, time_model: TimeModel | None = None) -> Plan:
    if mode not in MODE_NAMES:
        raise ValueError(f"mode must be one of {tuple(MODE_NAMES)}, got {mode!r}")
    if coverage not in COVERAGES:
        raise ValueError(f"coverage must be one of {COVERAGES}, got {coverage!r}")
    darp = darp or DarpConfig()
    time_model = time_model or TimeModel()
    mega = build_mega(grid)
    mega_starts = [MegaGrid.parent(s) for s in grid.robot_starts]
    part = partition(mega, mega_starts, MODE_NAMES[mode], darp)
    loops = tuple(stc_path(_start_component(part, i, ms), mega, s, robot=i)
                  for i, (s, ms) in enumerate(zip(grid.robot_starts, mega_starts)))
    if coverage == "uf-stc":
        paths = tuple(plan_fleet_uf(list(loops), grid, small_cells(grid, mega)))
    else:
        paths = loops
    metrics = tuple(score_path(p, time_model) for p in paths)
    report = fleet_report(metrics, grid, [p.covered() for p in paths])
    return Plan(grid, mega, mode, coverage, darp, time_model, part, loops, paths, metrics, report)

