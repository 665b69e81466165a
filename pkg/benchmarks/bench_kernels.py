"""Numba vs pure-numpy timings for the grid kernels and a full partition.

    python benchmarks/bench_kernels.py [--size 128] [--repeat 5]

Both kernel modules are imported directly, so the MRCPP_BACKEND flag does
not matter here. The partition run is timed in a subprocess per backend,
since the flag is read once at import.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from mrcpp import _kernels_numba as nb
from mrcpp import _kernels_numpy as npk

PARTITION_SNIPPET = """
import time
from mrcpp import build_mega, partition
from mrcpp.fixtures import load_fixture
g = load_fixture("map_c")
mega = build_mega(g)
starts = [mega.parent(s) for s in g.robot_starts]
partition(mega, starts, "astar")  # warm-up (jit compile)
t = time.perf_counter()
r = partition(mega, starts, "astar")
print(f"{time.perf_counter() - t:.3f} {r.iterations}")
"""


def random_free(size, density, seed):
    rng = np.random.default_rng(seed)
    free = rng.random((size, size)) >= density
    free[0, 0] = True
    return free


def bench(name, fn, args, repeat):
    fn(*args)  # compile / warm caches
    best = min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))
    return name, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=128)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    free = random_free(args.size, 0.3, seed=1)
    mask = random_free(args.size, 0.7, seed=2)
    mask[0, 0] = True
    rows = []
    for label, kernel_args in (
        ("bfs_distance", (free, 0, 0)),
        ("component_mask", (free, 0, 0)),
        ("nearest_distance", (mask,)),
    ):
        _, t_nb = bench(label, getattr(nb, label), kernel_args, args.repeat)
        _, t_np = bench(label, getattr(npk, label), kernel_args, args.repeat)
        a, b = getattr(nb, label)(*kernel_args), getattr(npk, label)(*kernel_args)
        same = np.allclose(a, b) if a.dtype.kind == "f" else np.array_equal(a, b)
        rows.append((label, t_nb, t_np, same))

    print(f"grid {args.size}x{args.size}, best of {args.repeat}")
    print(f"{'kernel':<18}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}  agree")
    for label, t_nb, t_np, same in rows:
        print(f"{label:<18}{t_nb * 1e3:>12.3f}{t_np * 1e3:>12.3f}{t_np / t_nb:>10.1f}  {same}")

    print("\nfull partition on map_c (5 robots, astar seeding)")
    for backend in ("numba", "numpy"):
        env = dict(os.environ, MRCPP_BACKEND=backend)
        out = subprocess.run([sys.executable, "-c", PARTITION_SNIPPET], env=env,
                             capture_output=True, text=True, check=True).stdout.split()
        print(f"  {backend:<6} {float(out[0]):.3f} s over {out[1]} iterations")


if __name__ == "__main__":
    main()
