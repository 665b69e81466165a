"""Bundled benchmark maps (regenerate with tools/make_fixtures.py)."""
from __future__ import annotations

from importlib import resources

from .grid import GridMap, parse_map

NAMES = ("open_16", "room_wall", "map_a", "map_b", "map_c", "map_d", "map_e")
SMALL_CELL_MAPS = ("map_d", "map_e")


def fixture_text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    return resources.files("mrcpp.data").joinpath(f"{name}.map").read_text()


def load_fixture(name: str) -> GridMap:
    return parse_map(fixture_text(name))
