import os
import subprocess
import sys

import numpy as np
import pytest

from mrcpp import _accel, _kernels_numba, _kernels_numpy

from conftest import bfs_oracle, flood

BACKENDS = [_kernels_numba, _kernels_numpy]
IDS = ["numba", "numpy"]


def brute_edt(mask):
    pts = np.argwhere(mask)
    h, w = mask.shape
    out = np.full((h, w), np.inf)
    for r in range(h):
        for c in range(w):
            if len(pts):
                out[r, c] = np.sqrt(((pts - (r, c)) ** 2).sum(axis=1).min())
    return out


def random_grids(rng, count, max_side=9):
    for _ in range(count):
        h, w = rng.integers(1, max_side + 1, size=2)
        yield rng.random((h, w)) < rng.uniform(0.0, 0.6)


def test_default_backend_is_numba():
    assert _accel.BACKEND in ("numba", "numpy")
    assert _accel.bfs_distance is getattr(
        _kernels_numba if _accel.BACKEND == "numba" else _kernels_numpy, "bfs_distance")


@pytest.mark.parametrize("k", BACKENDS, ids=IDS)
def test_bfs_matches_oracle(k, rng):
    for blocked in random_grids(rng, 60):
        free = ~blocked
        cells = np.argwhere(free)
        if not len(cells):
            continue
        src = tuple(cells[rng.integers(len(cells))])
        np.testing.assert_array_equal(k.bfs_distance(free, *src), bfs_oracle(free, src))


@pytest.mark.parametrize("k", BACKENDS, ids=IDS)
def test_bfs_blocked_source_is_all_unreachable(k):
    free = np.ones((3, 3), dtype=bool)
    free[1, 1] = False
    assert np.isinf(k.bfs_distance(free, 1, 1)).all()


@pytest.mark.parametrize("k", BACKENDS, ids=IDS)
def test_component_mask_matches_flood(k, rng):
    for mask in random_grids(rng, 60):
        cells = [tuple(x) for x in np.argwhere(mask)]
        if not cells:
            assert not k.component_mask(mask, 0, 0).any()
            continue
        seed = cells[rng.integers(len(cells))]
        got = {tuple(x) for x in np.argwhere(k.component_mask(mask, *seed))}
        assert got == flood(cells, seed)


@pytest.mark.parametrize("k", BACKENDS, ids=IDS)
def test_nearest_distance_matches_brute_force(k, rng):
    for mask in random_grids(rng, 40, max_side=12):
        np.testing.assert_allclose(k.nearest_distance(mask), brute_edt(mask), atol=1e-12)


@pytest.mark.parametrize("k", BACKENDS, ids=IDS)
def test_nearest_distance_empty_mask(k):
    assert np.isinf(k.nearest_distance(np.zeros((4, 5), dtype=bool))).all()


def test_backends_agree_on_large_grid(rng):
    free = rng.random((70, 90)) > 0.3
    free[0, 0] = True
    for name in ("bfs_distance", "component_mask"):
        np.testing.assert_array_equal(getattr(_kernels_numba, name)(free, 0, 0),
                                      getattr(_kernels_numpy, name)(free, 0, 0))
    np.testing.assert_allclose(_kernels_numba.nearest_distance(~free), _kernels_numpy.nearest_distance(~free))


@pytest.mark.parametrize("fixture", ["map_c", "map_e"])
def test_backends_give_identical_reports(fixture):
    outs = []
    for backend in ("numba", "numpy"):
        env = dict(os.environ, MRCPP_BACKEND=backend)
        code = ("import sys, mrcpp._accel as a; from mrcpp import cli; "
                "assert a.BACKEND == sys.argv[1]; sys.exit(cli.main(sys.argv[2:]))")
        res = subprocess.run([sys.executable, "-c", code, backend, "plan", "--fixture", fixture,
                              "--coverage", "uf-stc"], env=env, capture_output=True, text=True)
        assert res.returncode == 0, res.stderr
        outs.append(res.stdout)
    assert outs[0] == outs[1]
