"""Shared brute-force oracles and tiny map builders."""
from collections import deque

import numpy as np
import pytest

from mrcpp.grid import GridMap, build_mega, parse_map


def bfs_oracle(free, source):
    """Plain breadth-first distances; inf where unreachable."""
    h, w = free.shape
    dist = np.full((h, w), np.inf)
    if not free[source]:
        return dist
    dist[source] = 0
    q = deque([source])
    while q:
        r, c = q.popleft()
        for nr, nc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if 0 <= nr < h and 0 <= nc < w and free[nr, nc] and dist[nr, nc] == np.inf:
                dist[nr, nc] = dist[r, c] + 1
                q.append((nr, nc))
    return dist


def flood(cells, seed):
    """4-connected component of ``seed`` inside a set of cells."""
    cells = set(cells)
    seen = {seed}
    stack = [seed]
    while stack:
        r, c = stack.pop()
        for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return seen


def grid_from(rows):
    return parse_map("\n".join(rows))


def mega_from(rows):
    """Map drawn at mega scale: each character becomes a 2x2 block and a
    digit marks that robot's start (top-left subcell)."""
    occ = np.array([[ch == "#" for ch in row] for row in rows])
    occ = np.repeat(np.repeat(occ, 2, 0), 2, 1)
    starts = {int(ch): (2 * r, 2 * c) for r, row in enumerate(rows) for c, ch in enumerate(row) if ch.isdigit()}
    grid = GridMap(occ, tuple(starts[k] for k in sorted(starts)))
    return grid, build_mega(grid)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
