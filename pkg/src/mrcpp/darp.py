"""Balanced, connected area division of the mega-grid among robots (DARP).

Each robot gets an evaluation matrix seeded from its distance field; cells go
to the cheapest robot. The loop rescales each matrix by a per-robot
correction factor until region sizes are balanced, and nudges disconnected
fragments back toward the robot's start-connected region with a
connectivity multiplier.

A few additions keep the loop from cycling: a tiny seeded jitter breaks
exact cost ties, the step shrinks each time the over/under pattern flips,
and the connectivity multipliers accumulate across iterations. When the
loop stalls, a local repair regrows detached fragments and hands boundary
cells between neighbouring regions until sizes are balanced.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _accel
from .distance import UNREACHABLE, euclidean_field, path_distance_field
from .grid import Cell, MegaGrid

log = logging.getLogger(__name__)

UNASSIGNED = -1
MODES = ("euclidean", "astar")
MIN_CORRECTION = 1e-6


class PartitionError(ValueError):
    pass


class InfeasibleStartError(PartitionError):
    """A robot start cannot anchor a region at mega-cell resolution."""


class NoFreeCellsError(PartitionError):
    pass


@dataclass(frozen=True)
class DarpConfig:
    eta: float = 0.1
    gamma: float = 0.01
    max_iter: int = 2000
    # tie-breaking and step control
    jitter: float = 1e-3
    seed: int = 0
    decay: float = 0.5
    accumulate: bool = True
    # iterations without improvement before a repair attempt; 0 disables
    patience: int = 200
    repair: bool = True

    def __post_init__(self):
        if not self.eta > 0:
            raise ValueError("eta must be positive")
        if not 0 <= self.gamma < 1:
            raise ValueError("gamma must lie in [0, 1)")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.jitter < 0 or self.decay < 0 or self.patience < 0:
            raise ValueError("jitter, decay and patience must be non-negative")


@dataclass(frozen=True, eq=False)
class PartitionResult:
    assignment: np.ndarray
    region_sizes: tuple[int, ...]
    fair_share: float
    final_J: float
    iterations: int
    converged: bool
    excluded_cells: frozenset = field(default_factory=frozenset)

    @property
    def n_robots(self) -> int:
        return len(self.region_sizes)

    def region(self, robot: int) -> list[Cell]:
        return [(int(r), int(c)) for r, c in np.argwhere(self.assignment == robot)]


def check_starts(mega: MegaGrid, starts: Sequence[Cell]):
    if not starts:
        raise InfeasibleStartError("at least one robot is required")
    for i, s in enumerate(starts):
        if not mega.is_free(s):
            raise InfeasibleStartError(f"robot {i} start mega-cell {tuple(s)} is not free")
    if len(set(map(tuple, starts))) != len(starts):
        raise InfeasibleStartError("two robots share a start mega-cell")


def seed_evaluation(mega: MegaGrid, starts: Sequence[Cell], mode: str = "astar") -> list[np.ndarray]:
    """Initial per-robot cost matrices from Euclidean or path distances."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    check_starts(mega, starts)
    fn = path_distance_field if mode == "astar" else euclidean_field
    return [fn(mega, s).values for s in starts]


def assign(evals: Sequence[np.ndarray]) -> np.ndarray:
    """Cell-wise argmin over robots; ties go to the lowest robot index."""
    stack = np.stack(evals)
    out = np.argmin(stack, axis=0)
    out[~np.isfinite(stack.min(axis=0))] = UNASSIGNED
    return out


def fairness(sizes: Sequence[float], fair_share: float) -> float:
    k = np.asarray(sizes, dtype=float)
    return 0.5 * float(((k - fair_share) ** 2).sum())


def connectivity_matrix(mega: MegaGrid, assignment: np.ndarray, robot: int, start: Cell,
                        gamma: float = DarpConfig.gamma) -> np.ndarray:
    """Multiplier that rewards the start-connected part of a robot's region.

    Raw values are (distance to the connected part) - (distance to the
    detached parts), rescaled affinely into ``[1 - gamma, 1 + gamma]`` over
    the free cells. All ones when the region is already connected.
    """
    own = assignment == robot
    connected = _accel.component_mask(own, start[0], start[1])
    detached = own & ~connected
    ones = np.ones(assignment.shape)
    if not detached.any():
        return ones
    raw = _accel.nearest_distance(connected) - _accel.nearest_distance(detached)
    free = mega.free
    lo, hi = raw[free].min(), raw[free].max()
    if hi <= lo:
        return ones
    out = (1.0 - gamma) + 2.0 * gamma * (raw - lo) / (hi - lo)
    out[~free] = 1.0
    return out


def _regions_connected(assignment: np.ndarray, starts: Sequence[Cell], sizes: np.ndarray) -> list[bool]:
    flags = []
    for i, (r, c) in enumerate(starts):
        comp = _accel.component_mask(assignment == i, r, c)
        flags.append(int(comp.sum()) == int(sizes[i]))
    return flags


def _jitter(shape, n, magnitude, seed=0):
    """Deterministic relative jitter that breaks exact cost ties."""
    if magnitude <= 0:
        return [np.ones(shape) for _ in range(n)]
    rng = np.random.default_rng(seed)
    return [1.0 + magnitude * rng.random(shape) for _ in range(n)]


def partition(mega: MegaGrid, starts: Sequence[Cell], mode: str = "astar",
              config: DarpConfig | None = None) -> PartitionResult:
    """Iterate correction factors until regions are balanced and connected.

    Returns the best iterate seen (connected first, then lowest J) with
    ``converged=False`` when neither the loop nor the repair pass succeeds
    within ``max_iter`` iterations.
    """
    config = config or DarpConfig()
    starts = [tuple(map(int, s)) for s in starts]
    seeds = seed_evaluation(mega, starts, mode)
    n = len(starts)
    free = mega.free
    if not free.any():
        raise NoFreeCellsError("map has no free mega-cells")

    # A robot may only claim cells it can actually drive to.
    claimable = [_accel.bfs_distance(np.ascontiguousarray(free), r, c) < UNREACHABLE
                 for r, c in starts]
    noise = _jitter(free.shape, n, config.jitter, config.seed)
    for i in range(n):
        seeds[i] = np.where(claimable[i], seeds[i] * noise[i], UNREACHABLE)
    coverable = np.logical_or.reduce(claimable)
    excluded = frozenset((int(r), int(c)) for r, c in np.argwhere(free & ~coverable))
    total = int(coverable.sum())
    fair = total / n

    m = np.ones(n)
    conn = [np.ones(free.shape) for _ in range(n)]
    best = None
    best_key = None
    last_sign = None
    flips = 0
    since_best = 0
    it = 0
    for it in range(1, config.max_iter + 1):
        evals = [conn[i] * (m[i] * seeds[i]) for i in range(n)]
        a = assign(evals)
        sizes = np.bincount(a[a >= 0], minlength=n)[:n]
        connected = _regions_connected(a, starts, sizes)
        J = fairness(sizes, fair)
        key = (not all(connected), J)
        since_best += 1
        if best_key is None or key < best_key:
            best_key = key
            best = (a, m.copy())
            since_best = 0
        if all(connected) and np.max(np.abs(sizes - fair)) < 1:
            log.debug("partition converged after %d iterations", it)
            return _result(a, n, fair, it, True, excluded)
        if config.repair and config.patience and since_best >= config.patience:
            # stalled: try to finish the current iterate by local repair
            fixed = _repair(a, starts, [m[i] * seeds[i] for i in range(n)], fair)
            if fixed is not None:
                log.debug("partition repaired after %d iterations", it)
                return _result(fixed, n, fair, it, True, excluded)
            since_best = 0
        sign = np.sign(sizes - fair)
        if last_sign is not None and np.any(sign * last_sign < 0):
            flips += 1
        last_sign = sign
        step = config.eta / (1 + flips) ** config.decay
        m = np.maximum(m * (1.0 + step * (sizes - fair) / fair), MIN_CORRECTION)
        for i in range(n):
            if not connected[i]:
                c = connectivity_matrix(mega, a, i, starts[i], config.gamma)
                conn[i] = conn[i] * c if config.accumulate else c
            elif not config.accumulate:
                conn[i] = np.ones(free.shape)

    a, m_best = best
    if config.repair:
        fixed = _repair(a, starts, [m_best[i] * seeds[i] for i in range(n)], fair)
        if fixed is not None:
            return _result(fixed, n, fair, it, True, excluded)
    log.info("partition did not converge in %d iterations (best J=%.3f)", it, best_key[1])
    return _result(a, n, fair, it, False, excluded)


def _result(a, n, fair, it, converged, excluded):
    sizes = np.bincount(a[a >= 0], minlength=n)[:n]
    return PartitionResult(_readonly(a), tuple(int(k) for k in sizes), fair,
                           fairness(sizes, fair), it, converged, excluded)


def _repair(a, starts, evals, fair):
    """Regrow detached fragments, then rebalance; None if that fails."""
    n = len(starts)
    a = _regrow(a, starts, evals)
    a = _rebalance(a, starts, evals, fair)
    sizes = np.bincount(a[a >= 0], minlength=n)[:n]
    if all(_regions_connected(a, starts, sizes)) and np.max(np.abs(sizes - fair)) < 1:
        return a
    return None


_STEPS = ((-1, 0), (0, -1), (1, 0), (0, 1))


def _neighbours(cell, shape):
    r, c = cell
    for dr, dc in _STEPS:
        nr, nc = r + dr, c + dc
        if 0 <= nr < shape[0] and 0 <= nc < shape[1]:
            yield nr, nc


def _regrow(a, starts, evals):
    """Drop detached fragments and regrow them onto adjacent connected regions."""
    a = np.array(a, copy=True)
    n = len(starts)
    pending = a >= 0
    for i, (r, c) in enumerate(starts):
        comp = _accel.component_mask(a == i, r, c)
        pending &= ~comp
    if not pending.any():
        return a
    a[pending] = UNASSIGNED
    sizes = np.bincount(a[a >= 0], minlength=n)[:n]
    while pending.any():
        # cheapest (robot, cell) pair on the frontier, smaller regions first
        best = None
        for r, c in np.argwhere(pending):
            for nb in _neighbours((r, c), a.shape):
                j = a[nb]
                if j < 0 or not np.isfinite(evals[j][r, c]):
                    continue
                key = (sizes[j], evals[j][r, c], j, r, c)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        _, _, j, r, c = best
        a[r, c] = j
        sizes[j] += 1
        pending[r, c] = False
    return a


def _branch(a, donor, start, cell):
    """Cells that leave donor's region if ``cell`` is handed over: the cell
    itself plus whatever would be cut off from the donor's start."""
    own = a == donor
    own[cell] = False
    kept = _accel.component_mask(own, start[0], start[1])
    moved = own & ~kept
    moved[cell] = True
    return moved


def _rebalance(a, starts, evals, fair, max_moves=100000):
    """Local search on J that keeps every region connected.

    Each round either hands a boundary branch straight to an adjacent,
    lighter region (smallest branch first), or, failing that, passes single
    cells along a chain of adjacent regions from a heavy robot to a light
    one. Both strictly lower J, so the search terminates.
    """
    a = np.array(a, copy=True)
    n = len(starts)
    finite = [np.isfinite(e) for e in evals]
    for _ in range(max_moves):
        sizes = np.bincount(a[a >= 0], minlength=n)[:n]
        dev = sizes - fair
        if np.max(np.abs(dev)) < 1:
            break
        move = _best_direct_move(a, starts, evals, finite, dev)
        if move is not None:
            moved, v = move
            a[moved] = v
            continue
        chain = _single_cell_chain(a, starts, evals, finite, dev)
        if chain is None:
            break
        for cell, v in chain:
            a[cell] = v
    return a


def _candidate_moves(a, starts, finite, donor):
    """(cell, receiver, branch mask) for every hand-over out of ``donor``."""
    for r, c in np.argwhere(a == donor):
        cell = (int(r), int(c))
        if cell == starts[donor]:
            continue
        receivers = sorted({int(a[nb]) for nb in _neighbours(cell, a.shape)} - {donor, UNASSIGNED})
        if not receivers:
            continue
        moved = _branch(a, donor, starts[donor], cell)
        for v in receivers:
            if finite[v][moved].all():
                yield cell, v, moved


def _best_direct_move(a, starts, evals, finite, dev):
    best = None
    for donor in range(len(starts)):
        if not np.any(dev[donor] - dev > 1):
            continue
        for cell, v, moved in _candidate_moves(a, starts, finite, donor):
            size = int(moved.sum())
            if size >= dev[donor] - dev[v]:
                continue
            cost = float(evals[v][cell] / max(evals[donor][cell], 1e-12))
            key = (size, size * (size - dev[donor] + dev[v]), cost, donor, v, cell)
            if best is None or key < best[0]:
                best = (key, moved, v)
    return None if best is None else best[1:]


def _single_cell_chain(a, starts, evals, finite, dev):
    """Shortest robot chain heavy -> ... -> light where every hop can hand
    over one cell without disconnecting the giver."""
    n = len(starts)
    hops = {}
    for u in range(n):
        for cell, v, moved in _candidate_moves(a, starts, finite, u):
            if int(moved.sum()) != 1:
                continue
            cost = float(evals[v][cell] / max(evals[u][cell], 1e-12))
            if (u, v) not in hops or (cost, cell) < hops[(u, v)]:
                hops[(u, v)] = (cost, cell)
    for src in sorted(range(n), key=lambda i: (-dev[i], i)):
        if dev[src] <= 0:
            break
        prev = {src: None}
        queue = [src]
        while queue:
            nxt = []
            for u in queue:
                for v in range(n):
                    if v in prev or (u, v) not in hops:
                        continue
                    prev[v] = u
                    if dev[src] - dev[v] > 1:
                        chain = []
                        while prev[v] is not None:
                            chain.append((hops[(prev[v], v)][1], v))
                            v = prev[v]
                        # hand over from the sink end so each giver is still intact
                        return chain
                    nxt.append(v)
            queue = nxt
    return None


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a
