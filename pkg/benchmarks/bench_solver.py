#!/usr/bin/env python3
"""Time the compiled search kernel against the pure-Python fallback.

Run:  python3 benchmarks/bench_solver.py [--repeats N]

Builds one search plan per instance, then runs the same arrays through
kernels.search_python and (when numba is importable) the compiled
kernel, reporting the best of N repeats and the speedup.
"""

import argparse
import sys
import time

import numpy as np

from jigsaw import kernels
from jigsaw.core import generate_puzzle, pieces_of
from jigsaw.solver import _SearchPlan

CASES = [
    # (label, n, q, seed, limit)
    ("n=3 q=4 count-all", 3, 4, 11, 10**6),
    ("n=4 q=8 count-all", 4, 8, 3, 10**6),
    ("n=4 q=2 first-5", 4, 2, 7, 5),
    ("n=5 q=16 count-all", 5, 16, 1, 10**6),
    ("n=6 q=40 count-all", 6, 40, 2, 10**6),
]


def best_time(fn, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    if kernels.search_compiled is None:
        print("compiled kernel unavailable (numba missing or disabled); nothing to compare")
        return 1

    rows = []
    for label, n, q, seed, limit in CASES:
        plan = _SearchPlan(pieces_of(generate_puzzle(n, q, seed=seed)), n)
        sols = np.empty((0, n * n), dtype=np.int64)

        def run(kernel):
            return kernel(
                n, plan.items, plan.l_start, plan.t_start, plan.tl_start,
                plan.num_colors, plan.bottoms, plan.rights, limit, 2**62, 0, sols,
            )

        run(kernels.search_compiled)  # warm the JIT before timing
        t_py, r_py = best_time(lambda: run(kernels.search_python), args.repeats)
        t_nb, r_nb = best_time(lambda: run(kernels.search_compiled), args.repeats)
        assert r_py[:3] == r_nb[:3], (label, r_py, r_nb)
        rows.append((label, r_py[1], r_py[2], t_py, t_nb, t_py / t_nb))

    width = max(len(r[0]) for r in rows)
    print(f"{'instance':<{width}}  {'found':>7}  {'nodes':>9}  {'python':>10}  {'numba':>10}  {'speedup':>8}")
    for label, count, nodes, t_py, t_nb, speed in rows:
        print(
            f"{label:<{width}}  {count:>7}  {nodes:>9}  {t_py * 1e3:>8.2f}ms  {t_nb * 1e3:>8.2f}ms  {speed:>7.1f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
