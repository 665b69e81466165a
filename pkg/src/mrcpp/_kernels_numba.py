"""numba-compiled grid kernels.

Every function here has a twin of the same name in ``_kernels_numpy`` and the
two must agree exactly; see ``tests/test_kernels.py``.
"""
import numpy as np
from numba import njit

_DR = np.array([-1, 0, 1, 0], dtype=np.int64)
_DC = np.array([0, -1, 0, 1], dtype=np.int64)


@njit(cache=True)
def bfs_distance(free, sr, sc):
    h, w = free.shape
    dist = np.full((h, w), np.inf)
    if not free[sr, sc]:
        return dist
    queue = np.empty(h * w, dtype=np.int64)
    head = 0
    tail = 0
    dist[sr, sc] = 0.0
    queue[tail] = sr * w + sc
    tail += 1
    while head < tail:
        idx = queue[head]
        head += 1
        r = idx // w
        c = idx % w
        d = dist[r, c] + 1.0
        for k in range(4):
            nr = r + _DR[k]
            nc = c + _DC[k]
            if 0 <= nr < h and 0 <= nc < w and free[nr, nc] and dist[nr, nc] == np.inf:
                dist[nr, nc] = d
                queue[tail] = nr * w + nc
                tail += 1
    return dist


@njit(cache=True)
def component_mask(mask, sr, sc):
    h, w = mask.shape
    out = np.zeros((h, w), dtype=np.bool_)
    if not mask[sr, sc]:
        return out
    stack = np.empty(h * w, dtype=np.int64)
    top = 0
    out[sr, sc] = True
    stack[top] = sr * w + sc
    top += 1
    while top > 0:
        top -= 1
        idx = stack[top]
        r = idx // w
        c = idx % w
        for k in range(4):
            nr = r + _DR[k]
            nc = c + _DC[k]
            if 0 <= nr < h and 0 <= nc < w and mask[nr, nc] and not out[nr, nc]:
                out[nr, nc] = True
                stack[top] = nr * w + nc
                top += 1
    return out


@njit(cache=True)
def _edt_1d(f, n, out, v, z):
    # lower envelope of parabolas (Felzenszwalb & Huttenlocher)
    k = 0
    v[0] = 0
    z[0] = -np.inf
    z[1] = np.inf
    first = -1
    for q in range(n):
        if f[q] < np.inf:
            first = q
            break
    if first < 0:
        for q in range(n):
            out[q] = np.inf
        return
    v[0] = first
    for q in range(first + 1, n):
        if f[q] == np.inf:
            continue
        while True:
            p = v[k]
            s = ((f[q] + q * q) - (f[p] + p * p)) / (2.0 * q - 2.0 * p)
            if s <= z[k]:
                k -= 1
            else:
                break
        k += 1
        v[k] = q
        z[k] = s
        z[k + 1] = np.inf
    k = 0
    for q in range(n):
        while z[k + 1] < q:
            k += 1
        p = v[k]
        out[q] = (q - p) * (q - p) + f[p]


@njit(cache=True)
def nearest_distance(mask):
    h, w = mask.shape
    sq = np.empty((h, w))
    for r in range(h):
        for c in range(w):
            sq[r, c] = 0.0 if mask[r, c] else np.inf
    n = max(h, w)
    f = np.empty(n)
    out = np.empty(n)
    v = np.empty(n, dtype=np.int64)
    z = np.empty(n + 1)
    for c in range(w):
        for r in range(h):
            f[r] = sq[r, c]
        _edt_1d(f, h, out, v, z)
        for r in range(h):
            sq[r, c] = out[r]
    for r in range(h):
        for c in range(w):
            f[c] = sq[r, c]
        _edt_1d(f, w, out, v, z)
        for c in range(w):
            sq[r, c] = out[c]
    return np.sqrt(sq)
