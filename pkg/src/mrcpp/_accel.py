"""Backend selection for the hot grid kernels.

Set ``MRCPP_BACKEND=numpy`` to bypass numba (useful for debugging or when
numba is unavailable). The default is ``numba`` when it imports cleanly.
"""
import os

BACKEND = os.environ.get("MRCPP_BACKEND", "numba").lower()

if BACKEND == "numba":
    try:
        from . import _kernels_numba as kernels
    except ImportError:  # pragma: no cover
        BACKEND = "numpy"
if BACKEND != "numba":
    BACKEND = "numpy"
    from . import _kernels_numpy as kernels

bfs_distance = kernels.bfs_distance
component_mask = kernels.component_mask
nearest_distance = kernels.nearest_distance

__all__ = ["BACKEND", "bfs_distance", "component_mask", "nearest_distance"]
