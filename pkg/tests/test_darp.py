import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mrcpp.darp import (UNASSIGNED, DarpConfig, InfeasibleStartError, assign, connectivity_matrix, fairness,
                        partition, seed_evaluation)
from mrcpp.grid import MegaGrid

from conftest import flood


def mega(rows):
    occ = np.array([[ch == "#" for ch in row] for row in rows])
    return MegaGrid(occ, (2 * occ.shape[0], 2 * occ.shape[1]))


def check_sound(m, starts, res):
    """Totality, connectivity and balance of a converged partition."""
    a = res.assignment
    n = len(starts)
    for i, s in enumerate(starts):
        region = {(int(r), int(c)) for r, c in np.argwhere(a == i)}
        assert s in region
        assert flood(region, s) == region
        assert len(region) in (math.floor(res.fair_share), math.ceil(res.fair_share))
    unassigned = {(int(r), int(c)) for r, c in np.argwhere(a == UNASSIGNED)}
    obstacles = {(int(r), int(c)) for r, c in np.argwhere(m.occupancy)}
    assert unassigned == obstacles | set(res.excluded_cells)
    assert sum(res.region_sizes) == int(m.free.sum()) - len(res.excluded_cells)
    assert res.fair_share == pytest.approx(sum(res.region_sizes) / n)


def test_seed_values_one_robot():
    m = mega(["..", ".."])
    (a,) = seed_evaluation(m, [(0, 0)], "astar")
    assert a.ravel().tolist() == [0, 1, 1, 2]
    (e,) = seed_evaluation(m, [(0, 0)], "euclidean")
    np.testing.assert_allclose(e.ravel(), [0, 1, 1, math.sqrt(2)])


def test_seed_behind_wall():
    m = mega(["0.#..", "..#..", "..#..", "....."])
    (a,) = seed_evaluation(m, [(0, 0)], "astar")
    (e,) = seed_evaluation(m, [(0, 0)], "euclidean")
    assert a[0, 3] == 9 and e[0, 3] == 3.0


def test_seed_mode_validation():
    with pytest.raises(ValueError):
        seed_evaluation(mega([".."]), [(0, 0)], "manhattan")


def test_assign_rules():
    m = mega(["...."])
    a = assign(seed_evaluation(m, [(0, 0), (0, 3)], "astar"))
    assert a.tolist() == [[0, 0, 1, 1]]
    tie = assign([np.array([[1.0, 2.0]]), np.array([[1.0, 1.0]])])
    assert tie.tolist() == [[0, 1]]
    blocked = assign([np.array([[math.inf, 0.0]]), np.array([[math.inf, 1.0]])])
    assert blocked.tolist() == [[UNASSIGNED, 0]]


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4), st.floats(1e-3, 1e3))
def test_assign_invariant_under_common_scaling(seed, n, k):
    rng = np.random.default_rng(seed)
    evals = [rng.random((5, 6)) for _ in range(n)]
    assert np.array_equal(assign(evals), assign([k * e for e in evals]))


def test_fairness():
    assert fairness([10, 10], 10) == 0
    assert fairness([12, 8], 10) == 4.0
    assert fairness([7], 7) == 0


def test_connectivity_matrix_connected_region_is_neutral():
    m = mega(["...."])
    a = np.array([[0, 0, 1, 1]])
    np.testing.assert_array_equal(connectivity_matrix(m, a, 0, (0, 0), 0.01), np.ones((1, 4)))


def test_connectivity_matrix_rewards_the_start_component():
    m = mega(["......"])
    a = np.array([[0, 0, 1, 1, 0, 0]])
    c = connectivity_matrix(m, a, 0, (0, 0), 0.05)
    # cheaper near the start-connected part, dearer near the detached part
    assert c[0, 0] < c[0, 5]
    assert c.min() == pytest.approx(0.95)
    assert c.max() == pytest.approx(1.05)


def test_single_robot_takes_its_component():
    m = mega(["0..#.", "...#.", "...#."])
    res = partition(m, [(0, 0)], "astar")
    assert res.converged and res.iterations == 1 and res.final_J == 0
    assert res.region_sizes == (9,)
    assert res.excluded_cells == {(0, 4), (1, 4), (2, 4)}
    check_sound(m, [(0, 0)], res)


def test_mirror_starts_split_evenly():
    m = mega(["...."] * 4)
    starts = [(0, 0), (3, 3)]
    for mode in ("euclidean", "astar"):
        res = partition(m, starts, mode)
        assert res.converged
        assert res.region_sizes == (8, 8)
        check_sound(m, starts, res)


def test_infeasible_starts():
    m = mega(["..#", "..."])
    with pytest.raises(InfeasibleStartError):
        partition(m, [(0, 2)])
    with pytest.raises(InfeasibleStartError):
        partition(m, [(0, 0), (0, 0)])
    with pytest.raises(InfeasibleStartError):
        partition(m, [])


def test_unbalanceable_corridor_reports_non_convergence():
    # robot 1 sits at a dead end behind robot 0 and can never hold 2 cells
    m = mega(["...."])
    res = partition(m, [(0, 2), (0, 3)], "astar", DarpConfig(max_iter=50))
    assert not res.converged
    assert res.iterations == 50
    assert res.region_sizes == (3, 1)


def test_partition_is_deterministic():
    m = mega(["........", "..##....", "..##..#.", "......#.", "........"])
    starts = [(0, 0), (4, 7), (0, 7)]
    a = partition(m, starts, "astar")
    b = partition(m, starts, "astar")
    assert np.array_equal(a.assignment, b.assignment)
    assert (a.region_sizes, a.iterations, a.final_J) == (b.region_sizes, b.iterations, b.final_J)


def test_obstacle_free_modes_agree_on_sizes():
    m = mega(["......"] * 6)
    starts = [(0, 0), (5, 5), (0, 5)]
    sizes = [sorted(partition(m, starts, mode).region_sizes) for mode in ("euclidean", "astar")]
    assert sizes[0] == sizes[1] == [12, 12, 12]


def test_config_validation():
    for bad in (dict(eta=0), dict(gamma=1.0), dict(max_iter=0), dict(jitter=-1), dict(patience=-1)):
        with pytest.raises(ValueError):
            DarpConfig(**bad)


def test_result_is_read_only():
    res = partition(mega(["0..."]), [(0, 0)])
    with pytest.raises(ValueError):
        res.assignment[0, 0] = 3


def _random_case(seed):
    rng = np.random.default_rng(seed)
    h, w = (int(x) for x in rng.integers(3, 9, size=2))
    occ = rng.random((h, w)) < 0.25
    free = [tuple(map(int, x)) for x in np.argwhere(~occ)]
    n = int(rng.integers(1, min(4, len(free)) + 1)) if free else 0
    picks = rng.choice(len(free), size=n, replace=False) if n else []
    return MegaGrid(occ, (2 * h, 2 * w)), [free[i] for i in picks]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["euclidean", "astar"]))
def test_converged_partitions_are_sound(seed, mode):
    m, starts = _random_case(seed)
    if not starts:
        return
    res = partition(m, starts, mode)
    assert res.n_robots == len(starts)
    if res.converged:
        check_sound(m, starts, res)
    else:
        assert res.final_J > 0 or not all(
            flood(set(res.region(i)), s) == set(res.region(i)) for i, s in enumerate(starts))
