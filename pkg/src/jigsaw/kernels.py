"""Backtracking search kernel, compiled with numba when available.

The scanline search below is the hot loop of the whole package: the
phase-transition sweeps call it hundreds of times per (n, q) cell.  It
is written in array-only style so the same function body runs both ways:

* compiled with ``numba.njit(cache=True, nogil=True)`` (default), or
* as plain Python over numpy arrays when the environment variable
  ``JIGSAW_DISABLE_NUMBA`` is set to a non-empty value, or when numba
  is not importable.

``search_compiled`` / ``search_python`` are both exported so the
benchmark in benchmarks/bench_solver.py can time one against the other;
``search`` is the selected default.  ``nogil=True`` lets sweep threads
overlap searches.

Search order: cells row-major; candidates at each cell ordered by
(piece index, rotation).  A node is one successful placement.  Statuses:
0 = search space exhausted (count is exact), 1 = count reached `limit`,
2 = node budget exhausted.
"""

from __future__ import annotations

import os

import numpy as np

STATUS_COMPLETE = 0
STATUS_LIMIT = 1
STATUS_BUDGET = 2


def _search_impl(n, items, l_start, t_start, tl_start, num_colors,
                 bottoms, rights, limit, budget, max_store, sols):
    """Count assemblies of n*n pieces whose touching sides match.

    items concatenates four candidate regions (see solver._SearchPlan):
    all orientations, then buckets by shown-left colour, by shown-top
    colour, and by (top, left) pairs; the *_start arrays hold absolute
    offsets into items.  bottoms/rights give each orientation's shown
    bottom/right colour (colours remapped to a dense 0..num_colors-1).
    Up to max_store full placements are copied into sols.
    """
    num_cells = n * n
    num_pieces = num_cells
    used = np.zeros(num_pieces, dtype=np.uint8)
    chosen = np.zeros(num_cells, dtype=np.int64)
    ptr = np.zeros(num_cells, dtype=np.int64)
    hi = np.zeros(num_cells, dtype=np.int64)
    right_shown = np.zeros(num_cells, dtype=np.int64)
    bottom_shown = np.zeros(num_cells, dtype=np.int64)

    count = 0
    nodes = 0
    stored = 0
    k = 0
    ptr[0] = 0
    hi[0] = 4 * num_pieces
    while True:
        i = ptr[k]
        h = hi[k]
        while i < h and used[items[i] >> 2] == 1:
            i += 1
        if i >= h:
            if k == 0:
                return STATUS_COMPLETE, count, nodes, stored
            k -= 1
            used[chosen[k] >> 2] = 0
            ptr[k] += 1
            continue
        ptr[k] = i
        it = items[i]
        p = it >> 2
        used[p] = 1
        chosen[k] = it
        right_shown[k] = rights[it]
        bottom_shown[k] = bottoms[it]
        nodes += 1
        if nodes > budget:
            return STATUS_BUDGET, count, nodes, stored
        if k == num_cells - 1:
            count += 1
            if stored < max_store:
                for d in range(num_cells):
                    sols[stored, d] = chosen[d]
                stored += 1
            if count >= limit:
                return STATUS_LIMIT, count, nodes, stored
            used[p] = 0
            ptr[k] += 1
            continue
        k += 1
        row = k // n
        if row == 0:
            c = right_shown[k - 1]
            ptr[k] = l_start[c]
            hi[k] = l_start[c + 1]
        elif k - row * n == 0:
            c = bottom_shown[k - n]
            ptr[k] = t_start[c]
            hi[k] = t_start[c + 1]
        else:
            key = bottom_shown[k - n] * num_colors + right_shown[k - 1]
            ptr[k] = tl_start[key]
            hi[k] = tl_start[key + 1]


search_python = _search_impl
search_compiled = None

_DISABLED = bool(os.environ.get("JIGSAW_DISABLE_NUMBA"))
if not _DISABLED:
    try:
        import numba

        search_compiled = numba.njit(cache=True, nogil=True)(_search_impl)
    except ImportError:
        search_compiled = None

if search_compiled is not None:
    search = search_compiled
    ACTIVE_BACKEND = "numba"
else:
    search = search_python
    ACTIVE_BACKEND = "python"
