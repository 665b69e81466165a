"""Spanning-tree coverage on a robot's mega-cell region.

A Kruskal tree over the region's 4-adjacency graph is circumnavigated at
subcell resolution, counterclockwise (tree on the robot's left), giving a
closed loop that visits every subcell of the region exactly once.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .grid import Cell, MegaGrid

LOOP = "loop"
SPIKE = "spike"


class DisconnectedRegionError(ValueError):
    pass


@dataclass(frozen=True)
class SpanningTree:
    nodes: frozenset
    edges: frozenset  # of (a, b) with a < b

    def has_edge(self, a: Cell, b: Cell) -> bool:
        return (min(a, b), max(a, b)) in self.edges


@dataclass(frozen=True)
class CoveragePath:
    """Subcell walk; ``kinds[i]`` tags ``moves[i]`` as LOOP or SPIKE."""

    robot: int
    moves: tuple
    kinds: tuple

    def __post_init__(self):
        if len(self.moves) != len(self.kinds):
            raise ValueError("moves and kinds must have equal length")

    def __len__(self):
        return len(self.moves)

    @property
    def n_moves(self) -> int:
        return max(len(self.moves) - 1, 0)

    def loop_only(self) -> "CoveragePath":
        keep = [i for i, k in enumerate(self.kinds) if k == LOOP]
        return CoveragePath(self.robot, tuple(self.moves[i] for i in keep), (LOOP,) * len(keep))

    def covered(self) -> set[Cell]:
        return set(self.moves)


class UnionFind:
    def __init__(self, items: Iterable):
        self.parent = {x: x for x in items}
        self.rank = dict.fromkeys(self.parent, 0)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        self.parent[y] = x
        if self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        return True


def _region_edges(nodes: set) -> list[tuple[Cell, Cell]]:
    # row-major by lower endpoint, horizontal before vertical; all weights equal
    edges = []
    for r, c in sorted(nodes):
        if (r, c + 1) in nodes:
            edges.append(((r, c), (r, c + 1)))
        if (r + 1, c) in nodes:
            edges.append(((r, c), (r + 1, c)))
    return edges


def build_mst(region: Iterable[Cell], anchor: Cell) -> SpanningTree:
    nodes = {tuple(map(int, x)) for x in region}
    if tuple(anchor) not in nodes:
        raise ValueError(f"anchor {anchor} is not in the region")
    uf = UnionFind(nodes)
    tree = [e for e in _region_edges(nodes) if uf.union(*e)]
    if len(tree) != len(nodes) - 1:
        raise DisconnectedRegionError(
            f"region of {len(nodes)} cells is not 4-connected ({len(tree)} tree edges)")
    return SpanningTree(frozenset(nodes), frozenset(tree))


def _next_subcell(tree: SpanningTree, cell: Cell) -> Cell:
    r, c = cell
    node = (r // 2, c // 2)
    R, C = node
    quadrant = (r % 2, c % 2)
    if quadrant == (0, 0):
        return (r, c - 1) if tree.has_edge(node, (R, C - 1)) else (r + 1, c)
    if quadrant == (1, 0):
        return (r + 1, c) if tree.has_edge(node, (R + 1, C)) else (r, c + 1)
    if quadrant == (1, 1):
        return (r, c + 1) if tree.has_edge(node, (R, C + 1)) else (r - 1, c)
    return (r - 1, c) if tree.has_edge(node, (R - 1, C)) else (r, c - 1)


def circumnavigate(tree: SpanningTree, mega: MegaGrid, start_subcell: Cell, robot: int = 0) -> CoveragePath:
    """Counterclockwise loop around ``tree`` starting and ending at ``start_subcell``."""
    start = tuple(map(int, start_subcell))
    if MegaGrid.parent(start) not in tree.nodes:
        raise ValueError(f"start subcell {start} is not inside the tree")
    limit = 4 * len(tree.nodes)
    moves = [start]
    cell = start
    for _ in range(limit):
        cell = _next_subcell(tree, cell)
        moves.append(cell)
        if cell == start:
            break
    if moves[-1] != start or len(moves) != limit + 1:
        raise AssertionError("circumnavigation did not close after visiting every subcell")
    return CoveragePath(robot, tuple(moves), (LOOP,) * len(moves))


def stc_path(region: Iterable[Cell], mega: MegaGrid, start_subcell: Cell, robot: int = 0) -> CoveragePath:
    tree = build_mst(region, MegaGrid.parent(start_subcell))
    return circumnavigate(tree, mega, start_subcell, robot)
