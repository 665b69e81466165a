"""Regenerate the bundled benchmark maps in src/mrcpp/data/.

    python tools/make_fixtures.py

Maps are built from seeded random rectangles and rejected until the free
space is connected at mega-cell resolution (so every free cell is
coverable). The 64x64 maps use rectangles aligned to mega-cells, so only
the single-subcell top-up leaves a few small cells; the small-cell maps use
unaligned rectangles and are rejected unless every small-cell pocket touches
a free mega-cell. Robot starts are spread by farthest-point sampling over mega-cells
whose 3x3 neighbourhood is free, so no robot starts inside a corridor.
"""
import pathlib

import numpy as np

from mrcpp._accel import component_mask
from mrcpp.grid import GridMap, build_mega, parse_map, serialize_map, small_cells

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "mrcpp" / "data"


def _connected(free):
    cells = np.argwhere(free)
    if len(cells) == 0:
        return False
    return component_mask(free, *cells[0]).sum() == free.sum()


def _interior(mega_free):
    """Free mega-cells whose whole 3x3 neighbourhood is free, so no robot
    starts inside a one-cell corridor."""
    pad = np.pad(mega_free, 1, constant_values=False)
    h, w = mega_free.shape
    out = np.ones_like(mega_free)
    for dr in range(3):
        for dc in range(3):
            out &= pad[dr:dr + h, dc:dc + w]
    return out


def _spread_starts(mega_free, n, rng):
    """Farthest-point sampling over interior mega-cells (Manhattan metric)."""
    free = np.argwhere(_interior(mega_free))
    first = free[rng.integers(len(free))]
    picks = [first]
    while len(picks) < n:
        d = np.min([np.abs(free - p).sum(axis=1) for p in picks], axis=0)
        picks.append(free[int(np.argmax(d))])
    # robot sits on the top-left subcell of its mega-cell
    return [(2 * int(r), 2 * int(c)) for r, c in picks]


def _mega_free(occ):
    h, w = occ.shape
    return ~occ.reshape(h // 2, 2, w // 2, 2).any(axis=(1, 3))


def _pockets_reachable(occ):
    grid = GridMap(occ, ((0, 0),) if not occ[0, 0] else (tuple(np.argwhere(~occ)[0]),))
    mega = build_mega(grid)
    small = small_cells(grid, mega)
    loop_sub = np.repeat(np.repeat(~mega.occupancy, 2, 0), 2, 1)
    mask = np.zeros(occ.shape, dtype=bool)
    for r, c in small:
        mask[r, c] = True
    seen = np.zeros_like(mask)
    for r, c in small:
        if seen[r, c]:
            continue
        comp = component_mask(mask, r, c)
        seen |= comp
        ring = comp.copy()
        ring[1:] |= comp[:-1]
        ring[:-1] |= comp[1:]
        ring[:, 1:] |= comp[:, :-1]
        ring[:, :-1] |= comp[:, 1:]
        if not (ring & loop_sub).any():
            return False
    return True


def block_map(size, target, n_robots, seed, aligned=True, max_block=8):
    """Grid with ``target`` obstacle subcells from random rectangles."""
    rng = np.random.default_rng(seed)
    occ = np.zeros((size, size), dtype=bool)
    tries = 0
    while occ.sum() < target and tries < 20000:
        tries += 1
        h, w = (int(x) for x in rng.integers(1, max_block + 1, size=2))
        r, c = (int(x) for x in rng.integers(0, size, size=2))
        if aligned:
            h, w, r, c = 2 * ((h + 1) // 2), 2 * ((w + 1) // 2), r - r % 2, c - c % 2
        new = occ.copy()
        new[r:r + h, c:c + w] = True
        if new.sum() > target:
            continue
        if not _connected(_mega_free(new)):
            continue
        if not aligned and not _pockets_reachable(new):
            continue
        occ = new
    # top up single subcells next to existing obstacles to hit the exact count
    while occ.sum() < target:
        r, c = (int(x) for x in rng.integers(0, size, size=2))
        if occ[r, c] or not occ[max(r - 1, 0):r + 2, max(c - 1, 0):c + 2].any():
            continue
        new = occ.copy()
        new[r, c] = True
        if _connected(_mega_free(new)):
            occ = new
    starts = _spread_starts(_mega_free(occ), n_robots, rng)
    assert _pockets_reachable(occ)
    return GridMap(occ, tuple(starts))


def room_wall():
    """Robot 0 in a room whose only door is bottom-left; robot 1 outside, just
    across the room's right wall. The room's top-right corner is Euclidean-near
    robot 1 but path-near robot 0. Drawn at mega-cell scale, then doubled."""
    sketch = [
        "..........#...",
        "..........#...",
        "..........#..1",
        "0.........#...",
        "..........#...",
        "..........#...",
        ".##########...",
        "..............",
    ]
    rows = []
    for line in sketch:
        wide = "".join(ch * 2 if ch in ".#" else ch + "." for ch in line)
        rows += [wide, wide.replace("0", ".").replace("1", ".")]
    return parse_map("\n".join(rows))


def open_map():
    occ = np.zeros((16, 16), dtype=bool)
    starts = ((0, 0), (14, 14), (0, 14), (14, 0), (8, 8))
    return GridMap(occ, starts)


FIXTURES = {
    "open_16": lambda: open_map(),
    "room_wall": room_wall,
    # 64x64, subcell-aligned blocks at three obstacle densities
    "map_a": lambda: block_map(64, round(0.101 * 4096), 5, seed=101),
    "map_b": lambda: block_map(64, round(0.296 * 4096), 5, seed=296),
    "map_c": lambda: block_map(64, round(0.435 * 4096), 5, seed=435),
    # 32x32, misaligned blocks that leave small cells
    "map_d": lambda: block_map(32, round(0.138 * 1024), 3, seed=138, aligned=False, max_block=5),
    "map_e": lambda: block_map(32, round(0.223 * 1024), 3, seed=223, aligned=False, max_block=5),
}

HEADERS = {
    "open_16": "obstacle-free 16x16, five robots",
    "room_wall": "room and wall: the room's top-right corner is Euclidean-near robot 1, path-near robot 0",
    "map_a": "64x64, 10.1% obstacles, five robots",
    "map_b": "64x64, 29.6% obstacles, five robots",
    "map_c": "64x64, 43.5% obstacles, five robots",
    "map_d": "32x32, 13.8% obstacles with small cells, three robots",
    "map_e": "32x32, 22.3% obstacles with small cells, three robots",
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, make in FIXTURES.items():
        grid = make()
        text = f"; {HEADERS[name]}\n" + serialize_map(grid)
        (OUT / f"{name}.map").write_text(text)
        print(f"{name}: {grid.height}x{grid.width} obstacles={grid.obstacle_ratio():.4f} robots={grid.n_robots}")


if __name__ == "__main__":
    main()
