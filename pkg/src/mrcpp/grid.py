"""Occupancy grids at subcell resolution and their 2x2 mega-cell merge.

Coordinates are ``(row, col)`` tuples throughout; row 0 is the top of the map.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

Cell = tuple[int, int]

FREE_CHAR = "."
OBSTACLE_CHAR = "#"
COMMENT_CHAR = ";"
MAX_TEXT_ROBOTS = 10


class MapError(ValueError):
    """Base class for invalid map input."""


class MapParseError(MapError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + message)


class RaggedLineError(MapParseError):
    pass


class UnknownCharacterError(MapParseError):
    pass


class DuplicateRobotError(MapParseError):
    pass


class NoRobotsError(MapParseError):
    pass


class StartOnObstacleError(MapParseError):
    pass


class InvalidMapError(MapError):
    """Structurally valid input that violates a GridMap invariant."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=bool, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GridMap:
    """Subcell occupancy grid (``True`` = obstacle) with robot start cells."""

    occupancy: np.ndarray
    robot_starts: tuple[Cell, ...]

    def __post_init__(self):
        occ = _frozen(self.occupancy)
        if occ.ndim != 2 or occ.shape[0] < 2 or occ.shape[1] < 2:
            raise InvalidMapError(f"grid must be at least 2x2, got shape {occ.shape}")
        starts = tuple((int(r), int(c)) for r, c in self.robot_starts)
        if not starts:
            raise InvalidMapError("map has no robots")
        if len(set(starts)) != len(starts):
            raise InvalidMapError("robot starts must be pairwise distinct")
        for i, (r, c) in enumerate(starts):
            if not (0 <= r < occ.shape[0] and 0 <= c < occ.shape[1]):
                raise InvalidMapError(f"robot {i} start {(r, c)} is out of bounds")
            if occ[r, c]:
                raise InvalidMapError(f"robot {i} start {(r, c)} is on an obstacle")
        object.__setattr__(self, "occupancy", occ)
        object.__setattr__(self, "robot_starts", starts)

    @property
    def height(self) -> int:
        return self.occupancy.shape[0]

    @property
    def width(self) -> int:
        return self.occupancy.shape[1]

    @property
    def n_robots(self) -> int:
        return len(self.robot_starts)

    @property
    def free(self) -> np.ndarray:
        return ~self.occupancy

    def obstacle_ratio(self) -> float:
        return float(self.occupancy.sum()) / self.occupancy.size

    def free_cells(self) -> set[Cell]:
        return {(int(r), int(c)) for r, c in np.argwhere(~self.occupancy)}

    def is_free(self, cell: Cell) -> bool:
        r, c = cell
        return 0 <= r < self.height and 0 <= c < self.width and not self.occupancy[r, c]

    def with_robots(self, starts: Iterable[Cell]) -> "GridMap":
        return GridMap(self.occupancy, tuple(starts))

    def __eq__(self, other):
        if not isinstance(other, GridMap):
            return NotImplemented
        return (self.robot_starts == other.robot_starts
                and np.array_equal(self.occupancy, other.occupancy))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class MegaGrid:
    """2x2-merged grid. A mega-cell is an obstacle if any constituent subcell
    is an obstacle or lies in the bottom/right padding of an odd-sized map."""

    occupancy: np.ndarray
    sub_shape: tuple[int, int] = field(default=(0, 0))

    @property
    def height(self) -> int:
        return self.occupancy.shape[0]

    @property
    def width(self) -> int:
        return self.occupancy.shape[1]

    @property
    def free(self) -> np.ndarray:
        return ~self.occupancy

    def is_free(self, cell: Cell) -> bool:
        r, c = cell
        return 0 <= r < self.height and 0 <= c < self.width and not self.occupancy[r, c]

    def free_cells(self) -> list[Cell]:
        return [(int(r), int(c)) for r, c in np.argwhere(~self.occupancy)]

    @staticmethod
    def parent(cell: Cell) -> Cell:
        """Mega-cell that owns the given subcell."""
        return (cell[0] // 2, cell[1] // 2)

    def subcells(self, cell: Cell) -> list[Cell]:
        """In-bounds subcells of a mega-cell (padding excluded)."""
        r, c = cell
        h, w = self.sub_shape
        return [(2 * r + dr, 2 * c + dc) for dr in (0, 1) for dc in (0, 1)
                if 2 * r + dr < h and 2 * c + dc < w]


def build_mega(grid: GridMap) -> MegaGrid:
    h, w = grid.height, grid.width
    mh, mw = (h + 1) // 2, (w + 1) // 2
    padded = np.ones((2 * mh, 2 * mw), dtype=bool)
    padded[:h, :w] = grid.occupancy
    occ = padded.reshape(mh, 2, mw, 2).any(axis=(1, 3))
    return MegaGrid(_frozen(occ), (h, w))


def small_cells(grid: GridMap, mega: MegaGrid) -> frozenset[Cell]:
    """Free subcells whose mega-cell is marked as an obstacle."""
    under = np.repeat(np.repeat(mega.occupancy, 2, axis=0), 2, axis=1)[:grid.height, :grid.width]
    return frozenset((int(r), int(c)) for r, c in np.argwhere(under & ~grid.occupancy))


def parse_map(text: str) -> GridMap:
    """Parse the ``.``/``#``/digit text map format."""
    rows: list[str] = []
    line_nos: list[int] = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith(COMMENT_CHAR):
            continue
        rows.append(line)
        line_nos.append(no)
    if not rows:
        raise MapParseError("map contains no grid rows")
    width = len(rows[0])
    occ = np.zeros((len(rows), width), dtype=bool)
    starts: dict[int, Cell] = {}
    for r, (line, no) in enumerate(zip(rows, line_nos)):
        if len(line) != width:
            raise RaggedLineError(
                f"row has {len(line)} cells, expected {width}", line=no, col=min(len(line), width) + 1)
        for c, ch in enumerate(line):
            if ch == OBSTACLE_CHAR:
                occ[r, c] = True
            elif ch == FREE_CHAR:
                pass
            elif ch.isdigit() and ch.isascii():
                d = int(ch)
                if d in starts:
                    raise DuplicateRobotError(f"robot {d} appears more than once", line=no, col=c + 1)
                starts[d] = (r, c)
            else:
                raise UnknownCharacterError(f"unknown map character {ch!r}", line=no, col=c + 1)
    if not starts:
        raise NoRobotsError("map has no robot start digits", line=line_nos[-1])
    if len(rows) < 2 or width < 2:
        raise MapParseError(f"grid must be at least 2x2, got {len(rows)}x{width}", line=line_nos[0])
    return GridMap(occ, tuple(starts[d] for d in sorted(starts)))


def serialize_map(grid: GridMap) -> str:
    if grid.n_robots > MAX_TEXT_ROBOTS:
        raise InvalidMapError(f"text maps hold at most {MAX_TEXT_ROBOTS} robots; use JSON")
    chars = np.where(grid.occupancy, OBSTACLE_CHAR, FREE_CHAR).astype("<U1")
    for i, (r, c) in enumerate(grid.robot_starts):
        chars[r, c] = str(i)
    return "\n".join("".join(row) for row in chars) + "\n"


def map_from_json(data: dict | str) -> GridMap:
    """Build a map from ``{height, width, obstacles, starts}``."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise MapParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, col=exc.colno) from None
    try:
        h, w = int(data["height"]), int(data["width"])
        obstacles = [(int(r), int(c)) for r, c in data.get("obstacles", [])]
        starts = [(int(r), int(c)) for r, c in data["starts"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MapParseError(f"malformed JSON map: {exc}") from None
    occ = np.zeros((h, w), dtype=bool) if h > 0 and w > 0 else np.zeros((0, 0), dtype=bool)
    for r, c in obstacles:
        if not (0 <= r < h and 0 <= c < w):
            raise MapParseError(f"obstacle {(r, c)} out of bounds")
        occ[r, c] = True
    if not starts:
        raise NoRobotsError("map has no robots")
    for i, (r, c) in enumerate(starts):
        if 0 <= r < h and 0 <= c < w and occ[r, c]:
            raise StartOnObstacleError(f"robot {i} start {(r, c)} is on an obstacle")
    return GridMap(occ, tuple(starts))


def map_to_json(grid: GridMap) -> dict:
    return {
        "height": grid.height,
        "width": grid.width,
        "obstacles": [[int(r), int(c)] for r, c in np.argwhere(grid.occupancy)],
        "starts": [list(s) for s in grid.robot_starts],
    }


def load_map(source: str) -> GridMap:
    """Parse map text or a JSON object, picking the format from content."""
    if source.lstrip().startswith("{"):
        return map_from_json(source)
    return parse_map(source)
