"""Completion-time scoring and fleet statistics."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .grid import Cell, GridMap
from .stc import CoveragePath


@dataclass(frozen=True)
class TimeModel:
    t_s: float = 1.0  # per straight move
    t_t: float = 1.5  # per turning move

    def __post_init__(self):
        if not (self.t_s > 0 and self.t_t > 0):
            raise ValueError("t_s and t_t must be positive")

    def time(self, straight: int, turns: int) -> float:
        return straight * self.t_s + turns * self.t_t


@dataclass(frozen=True)
class RobotMetrics:
    straight: int
    turns: int
    time: float
    covered: int = 0

    @property
    def n_moves(self) -> int:
        return self.straight + self.turns


@dataclass(frozen=True)
class RunReport:
    per_robot: tuple
    max: float
    min: float
    ave: float
    ratio: float | None  # None when some robot needs no time at all
    coverage_rate: float
    uncovered: tuple = field(default_factory=tuple)


def count_moves(moves: Sequence[Cell]) -> tuple[int, int]:
    """(straight, turns). A move is a turn when its direction differs from the
    previous move's, reversals included; the first move is straight."""
    if len(moves) < 2:
        raise ValueError("path has no moves")
    straight = turns = 0
    prev = None
    for a, b in zip(moves, moves[1:]):
        d = (b[0] - a[0], b[1] - a[1])
        if abs(d[0]) + abs(d[1]) != 1:
            raise ValueError(f"non-unit move {a} -> {b}")
        if prev is None or d == prev:
            straight += 1
        else:
            turns += 1
        prev = d
    return straight, turns


def score_path(path: CoveragePath | Sequence[Cell], model: TimeModel | None = None) -> RobotMetrics:
    model = model or TimeModel()
    moves = path.moves if isinstance(path, CoveragePath) else list(path)
    straight, turns = count_moves(moves)
    return RobotMetrics(straight, turns, model.time(straight, turns), len(set(moves)))


def fleet_report(metrics: Sequence[RobotMetrics], grid: GridMap,
                 covered: Iterable[Iterable[Cell]]) -> RunReport:
    if not metrics:
        raise ValueError("at least one robot is required")
    times = np.array([m.time for m in metrics], dtype=float)
    hi, lo = float(times.max()), float(times.min())
    union = set()
    for cells in covered:
        union.update(cells)
    free = grid.free_cells()
    uncovered = tuple(sorted(free - union))
    rate = (len(free) - len(uncovered)) / len(free) if free else 1.0
    return RunReport(
        per_robot=tuple(metrics),
        max=hi,
        min=lo,
        ave=float(times.mean()),
        ratio=hi / lo if lo > 0 else None,
        coverage_rate=rate,
        uncovered=uncovered,
    )
