import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mrcpp.grid import (DuplicateRobotError, GridMap, InvalidMapError, MapParseError, NoRobotsError,
                        RaggedLineError, StartOnObstacleError, UnknownCharacterError, build_mega,
                        load_map, map_from_json, map_to_json, parse_map, serialize_map, small_cells)
from mrcpp.fixtures import NAMES, load_fixture


def test_parse_tiny_map():
    g = parse_map(".#\n0.\n")
    assert (g.height, g.width) == (2, 2)
    assert g.occupancy.tolist() == [[False, True], [False, False]]
    assert g.robot_starts == ((1, 0),)


def test_parse_skips_comments_and_blank_lines():
    g = parse_map("; header\n\n0.\n..\n")
    assert g.robot_starts == ((0, 0),)
    assert g.height == 2


def test_robot_order_follows_digits_not_position():
    g = parse_map("1.\n.0\n")
    assert g.robot_starts == ((1, 1), (0, 0))


@pytest.mark.parametrize("text, err, line, col", [
    ("0..\n..\n", RaggedLineError, 2, 3),
    ("0.\n.x\n", UnknownCharacterError, 2, 2),
    ("0.\n.0\n", DuplicateRobotError, 2, 2),
    ("..\n..\n", NoRobotsError, 2, None),
    ("; c\n0.\n.?\n", UnknownCharacterError, 3, 2),
])
def test_parse_errors_name_the_location(text, err, line, col):
    with pytest.raises(err) as info:
        parse_map(text)
    assert info.value.line == line
    assert info.value.col == col


def test_parse_errors_are_distinct_types():
    kinds = {RaggedLineError, UnknownCharacterError, DuplicateRobotError, NoRobotsError, StartOnObstacleError}
    assert len(kinds) == 5
    assert all(issubclass(k, MapParseError) for k in kinds)


def test_too_small_grid_rejected():
    with pytest.raises(MapParseError):
        parse_map("0\n.\n")


def test_gridmap_invariants():
    occ = np.zeros((2, 2), dtype=bool)
    with pytest.raises(InvalidMapError):
        GridMap(occ, ())
    with pytest.raises(InvalidMapError):
        GridMap(occ, ((0, 0), (0, 0)))
    with pytest.raises(InvalidMapError):
        GridMap(occ, ((2, 0),))
    occ[0, 0] = True
    with pytest.raises(InvalidMapError):
        GridMap(occ, ((0, 0),))


def test_gridmap_is_immutable():
    g = parse_map("0.\n..\n")
    with pytest.raises(ValueError):
        g.occupancy[0, 1] = True


def test_mega_of_free_grid():
    mega = build_mega(parse_map("0...\n....\n....\n....\n"))
    assert mega.occupancy.shape == (2, 2)
    assert not mega.occupancy.any()


def test_one_obstacle_blocks_the_whole_mega_cell():
    g = parse_map("0#\n..\n")
    mega = build_mega(g)
    assert mega.occupancy.tolist() == [[True]]
    assert small_cells(g, mega) == {(0, 0), (1, 0), (1, 1)}


def test_odd_dimensions_are_padded_bottom_right():
    mega = build_mega(parse_map("0..\n...\n...\n"))
    assert mega.occupancy.tolist() == [[False, True], [True, True]]
    assert mega.subcells((1, 1)) == [(2, 2)]
    assert mega.subcells((0, 0)) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_free_grid_has_no_small_cells():
    g = parse_map("0...\n....\n")
    assert small_cells(g, build_mega(g)) == frozenset()


def _random_grid(seed, h, w, density):
    rng = np.random.default_rng(seed)
    occ = rng.random((h, w)) < density
    free = np.argwhere(~occ)
    if not len(free):
        occ[0, 0] = False
        free = np.array([[0, 0]])
    return GridMap(occ, (tuple(free[0]),))


grids = st.builds(_random_grid, st.integers(0, 10**6), st.integers(2, 11), st.integers(2, 11),
                  st.floats(0, 0.6))


@settings(max_examples=80, deadline=None)
@given(grids)
def test_mega_merge_rule_by_brute_force(g):
    mega = build_mega(g)
    for R in range(mega.height):
        for C in range(mega.width):
            subs = [(2 * R + dr, 2 * C + dc) for dr in (0, 1) for dc in (0, 1)]
            blocked = any(r >= g.height or c >= g.width or g.occupancy[r, c] for r, c in subs)
            assert mega.occupancy[R, C] == blocked


@settings(max_examples=80, deadline=None)
@given(grids)
def test_small_cells_by_brute_force(g):
    mega = build_mega(g)
    expect = {(r, c) for r in range(g.height) for c in range(g.width)
              if not g.occupancy[r, c] and mega.occupancy[r // 2, c // 2]}
    got = small_cells(g, mega)
    assert got == expect
    assert not any(mega.is_free(mega.parent(s)) for s in got)


@settings(max_examples=40, deadline=None)
@given(grids, st.integers(0, 10**6))
def test_merge_is_monotone(g, seed):
    rng = np.random.default_rng(seed)
    occ = g.occupancy.copy()
    occ[rng.integers(g.height), rng.integers(g.width)] = True
    before = build_mega(g).occupancy
    free = np.argwhere(~occ)
    if not len(free):
        return
    after = build_mega(GridMap(occ, (tuple(free[0]),))).occupancy
    assert not (before & ~after).any()


@settings(max_examples=60, deadline=None)
@given(grids)
def test_text_round_trip(g):
    assert parse_map(serialize_map(g)) == g


@settings(max_examples=60, deadline=None)
@given(grids)
def test_json_round_trip(g):
    assert map_from_json(map_to_json(g)) == g


def test_json_errors():
    with pytest.raises(MapParseError):
        map_from_json('{"height": 2')
    with pytest.raises(MapParseError):
        map_from_json({"height": 2, "width": 2})
    with pytest.raises(StartOnObstacleError):
        map_from_json({"height": 2, "width": 2, "obstacles": [[0, 0]], "starts": [[0, 0]]})
    with pytest.raises(NoRobotsError):
        map_from_json({"height": 2, "width": 2, "obstacles": [], "starts": []})


def test_load_map_detects_format():
    text = parse_map("0.\n..\n")
    assert load_map('{"height":2,"width":2,"obstacles":[],"starts":[[0,0]]}') == text
    assert load_map("0.\n..\n") == text


@pytest.mark.parametrize("name, ratio", [("map_a", 0.101), ("map_b", 0.296), ("map_c", 0.435),
                                         ("map_d", 0.138), ("map_e", 0.223)])
def test_fixture_obstacle_ratios(name, ratio):
    g = load_fixture(name)
    assert abs(g.obstacle_ratio() - ratio) <= 1 / g.occupancy.size + 1e-12


def test_all_fixtures_load():
    for name in NAMES:
        g = load_fixture(name)
        assert 1 <= g.n_robots <= 5
