"""Up-First compensation: spikes off the STC loop into small cells.

Small cells are free subcells hidden inside obstacle mega-cells, so the STC
loop never reaches them. While walking the loop the robot looks at its four
neighbours in the order up, left, down, right and steps into any small cell
nobody has covered yet, repeating the scan from there. At a dead zone it
backs up the way it came, still scanning, until it is back on the loop.
"""
from __future__ import annotations

from typing import Iterable, MutableMapping

from .distance import DIRECTIONS
from .grid import Cell, GridMap
from .stc import LOOP, SPIKE, CoveragePath

ClaimTable = MutableMapping[Cell, int]


def _spike(origin: Cell, small: frozenset, claims: ClaimTable, robot: int) -> list[Cell]:
    """Depth-first excursion from ``origin``; every emitted position is a spike
    move, ending with the step back onto ``origin`` (empty if nothing to do)."""
    out: list[Cell] = []
    stack = [origin]
    while stack:
        r, c = stack[-1]
        for dr, dc in DIRECTIONS:
            nb = (r + dr, c + dc)
            if nb in small and nb not in claims:
                claims[nb] = robot
                stack.append(nb)
                out.append(nb)
                break
        else:
            stack.pop()
            if stack:
                out.append(stack[-1])
    return out


def uf_augment(path: CoveragePath, grid: GridMap, small: Iterable[Cell],
               claims: ClaimTable | None = None, robot: int | None = None) -> CoveragePath:
    """Insert Up-First spikes into an STC loop.

    ``claims`` maps small cells to the robot that covers them and is updated
    in place; cells already claimed count as covered-area blocking.
    """
    small = frozenset(s for s in small if grid.is_free(s))
    claims = {} if claims is None else claims
    robot = path.robot if robot is None else robot
    moves: list[Cell] = []
    kinds: list[str] = []
    last = len(path.moves) - 1
    for i, (cell, kind) in enumerate(zip(path.moves, path.kinds)):
        moves.append(cell)
        kinds.append(kind)
        if kind != LOOP or (i == last and last > 0):
            # the closing position repeats the start, already scanned
            continue
        extra = _spike(cell, small, claims, robot)
        moves.extend(extra)
        kinds.extend([SPIKE] * len(extra))
    return CoveragePath(robot, tuple(moves), tuple(kinds))


def plan_fleet_uf(paths: list[CoveragePath], grid: GridMap, small: Iterable[Cell]) -> list[CoveragePath]:
    """Augment every robot's loop; lower robot indices claim shared small cells first."""
    small = frozenset(small)
    claims: dict[Cell, int] = {}
    out = {}
    for p in sorted(paths, key=lambda p: p.robot):
        out[p.robot] = uf_augment(p, grid, small, claims, p.robot)
    return [out[p.robot] for p in paths]
