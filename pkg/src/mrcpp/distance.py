"""Per-robot distance fields on the mega-grid.

Path-distance fields seed the A*-DARP variant, Euclidean fields seed plain
DARP. Blocked or disconnected cells carry ``UNREACHABLE`` (IEEE +inf), which
never wins an argmin against a finite cost.
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _accel
from .grid import Cell, MegaGrid

UNREACHABLE = math.inf

# up, left, down, right; shared with the UF compensation priority
DIRECTIONS: tuple[Cell, ...] = ((-1, 0), (0, -1), (1, 0), (0, 1))


@dataclass(frozen=True, eq=False)
class DistanceField:
    source: Cell
    values: np.ndarray

    @property
    def reachable(self) -> np.ndarray:
        return np.isfinite(self.values)

    def __getitem__(self, cell: Cell) -> float:
        return float(self.values[cell])


def manhattan(a: Cell, b: Cell) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def _check_source(mega: MegaGrid, cell: Cell, what: str = "source"):
    if not mega.is_free(cell):
        raise ValueError(f"{what} {cell} is not a free mega-cell")


def astar_path(mega: MegaGrid, start: Cell, goal: Cell) -> list[Cell] | None:
    """Shortest 4-connected path from ``start`` to ``goal``, or None.

    Unit step cost, Manhattan heuristic. The open set is ordered by
    ``(f, g, insertion)`` and neighbours are expanded up, left, down, right,
    so equal-length alternatives always resolve the same way.
    """
    _check_source(mega, start, "start")
    _check_source(mega, goal, "goal")
    free = mega.free
    h, w = free.shape
    counter = itertools.count()
    g_score = {start: 0}
    parent: dict[Cell, Cell] = {}
    closed: set[Cell] = set()
    open_heap = [(manhattan(start, goal), 0, next(counter), start)]
    while open_heap:
        _, g, _, node = heapq.heappop(open_heap)
        if node in closed:
            continue
        if node == goal:
            path = [node]
            while node in parent:
                node = parent[node]
                path.append(node)
            return path[::-1]
        closed.add(node)
        for dr, dc in DIRECTIONS:
            nb = (node[0] + dr, node[1] + dc)
            if not (0 <= nb[0] < h and 0 <= nb[1] < w) or not free[nb] or nb in closed:
                continue
            ng = g + 1
            if ng < g_score.get(nb, math.inf):
                g_score[nb] = ng
                parent[nb] = node
                heapq.heappush(open_heap, (ng + manhattan(nb, goal), ng, next(counter), nb))
    return None


def path_distance_field(mega: MegaGrid, source: Cell) -> DistanceField:
    """Shortest-path length from ``source`` to every cell.

    A single uniform-cost sweep; with unit edges this equals running A* with
    the (admissible) Manhattan heuristic once per target.
    """
    _check_source(mega, source)
    values = _accel.bfs_distance(np.ascontiguousarray(mega.free), source[0], source[1])
    return DistanceField(source, values)


def euclidean_field(mega: MegaGrid, source: Cell) -> DistanceField:
    """Straight-line distance from ``source``; obstacles in between are ignored."""
    _check_source(mega, source)
    rows, cols = np.indices(mega.occupancy.shape)
    values = np.hypot(rows - source[0], cols - source[1])
    values[mega.occupancy] = UNREACHABLE
    return DistanceField(source, values)
