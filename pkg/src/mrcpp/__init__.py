"""Multi-robot coverage path planning on occupancy grids.

Area division with DARP (Euclidean or obstacle-aware path-distance seeding),
spanning-tree coverage of each robot's region, Up-First spikes into small
cells, and completion-time scoring.
"""
from .darp import DarpConfig, PartitionResult, partition
from .grid import GridMap, MegaGrid, build_mega, load_map, parse_map, small_cells
from .metrics import RobotMetrics, RunReport, TimeModel, fleet_report, score_path
from .pipeline import Plan, plan
from .stc import CoveragePath, SpanningTree, build_mst, circumnavigate
from .uf import plan_fleet_uf, uf_augment

__version__ = "0.1.0"

__all__ = [
    "CoveragePath", "DarpConfig", "GridMap", "MegaGrid", "PartitionResult", "Plan",
    "RobotMetrics", "RunReport", "SpanningTree", "TimeModel", "build_mega", "build_mst",
    "circumnavigate", "fleet_report", "load_map", "parse_map", "partition", "plan",
    "plan_fleet_uf", "score_path", "small_cells", "uf_augment",
]
