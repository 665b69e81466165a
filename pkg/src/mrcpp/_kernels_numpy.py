"""Pure-numpy fallbacks for the compiled kernels in ``_kernels_numba``."""
import numpy as np


def _shifted_any(mask):
    """Cells with at least one 4-neighbour set in ``mask``."""
    out = np.zeros_like(mask)
    out[1:, :] |= mask[:-1, :]
    out[:-1, :] |= mask[1:, :]
    out[:, 1:] |= mask[:, :-1]
    out[:, :-1] |= mask[:, 1:]
    return out


def bfs_distance(free, sr, sc):
    free = np.asarray(free, dtype=bool)
    dist = np.full(free.shape, np.inf)
    if not free[sr, sc]:
        return dist
    seen = np.zeros_like(free)
    seen[sr, sc] = True
    frontier = seen.copy()
    level = 0
    while frontier.any():
        dist[frontier] = level
        level += 1
        frontier = _shifted_any(frontier) & free & ~seen
        seen |= frontier
    return dist


def component_mask(mask, sr, sc):
    mask = np.asarray(mask, dtype=bool)
    out = np.zeros_like(mask)
    if not mask[sr, sc]:
        return out
    out[sr, sc] = True
    while True:
        grown = (out | _shifted_any(out)) & mask
        if np.array_equal(grown, out):
            return out
        out = grown


def nearest_distance(mask, chunk=256):
    """Euclidean distance to the nearest set cell, by brute force."""
    mask = np.asarray(mask, dtype=bool)
    h, w = mask.shape
    pts = np.argwhere(mask).astype(np.float64)
    if len(pts) == 0:
        return np.full((h, w), np.inf)
    cells = np.indices((h, w)).reshape(2, -1).T.astype(np.float64)
    best = np.empty(len(cells))
    for lo in range(0, len(cells), chunk):
        block = cells[lo:lo + chunk]
        d2 = ((block[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
        best[lo:lo + chunk] = d2.min(axis=1)
    return np.sqrt(best).reshape(h, w)
