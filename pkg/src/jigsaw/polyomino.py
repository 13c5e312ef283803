"""Polyominoes, border walks and corner accounting.

Corner naming — read this first.  Corners are named by their interior
angle as seen from inside the polyomino, and the convention is the
opposite of everyday usage: a 90-degree interior angle is called
CONCAVE and a 270-degree interior angle is called CONVEX.  A single
square therefore has four concave corners.  The convention is fixed by
the identity this module mechanises: every outer border has exactly
four more concave than convex corners.

The outer border is traced counterclockwise (interior kept on the
walk's left) starting from the canonical segment: the top edge of the
leftmost cell in the topmost row, traversed westward.  At a lattice
point where two diagonal cells meet (a pinch), the walk hugs the region
on its right, so the outer trace never strays onto a hole boundary.

Side census: the border decomposes into four arcs delimited by the
walk's four extreme corners — where it leaves the top line at its
westernmost reach (top-left), meets the bottom line at its westernmost
reach (bottom-left), leaves the bottom line at its easternmost reach
(bottom-right) and meets the top line at its easternmost reach
(top-right).  Strictly between consecutive delimiters, concave and
convex corners balance exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

Cell = tuple[int, int]
Point = tuple[int, int]

CONCAVE = 1
STRAIGHT = 0
CONVEX = -1

# directions as (dr, dc) on lattice points; indices N, E, S, W
_DELTAS = ((-1, 0), (0, 1), (1, 0), (0, -1))
_N, _E, _S, _W = 0, 1, 2, 3

__all__ = [
    "Polyomino",
    "BoundingRect",
    "BorderWalk",
    "CornerCensus",
    "CONCAVE",
    "CONVEX",
    "STRAIGHT",
    "trace_outer_border",
    "corner_census",
    "side_corner_census",
    "find_holes",
    "find_indentations",
    "enumerate_fixed_polyominoes",
]


@dataclass(frozen=True)
class BoundingRect:
    min_row: int
    max_row: int
    min_col: int
    max_col: int

    @property
    def height(self) -> int:
        return self.max_row - self.min_row + 1

    @property
    def width(self) -> int:
        return self.max_col - self.min_col + 1


@dataclass(frozen=True)
class Polyomino:
    """A finite, 4-connected, nonempty set of unit cells (row, col)."""

    cells: frozenset

    def __post_init__(self) -> None:
        cells = frozenset(self.cells)
        object.__setattr__(self, "cells", cells)
        if not cells:
            raise ValueError("polyomino must be nonempty")
        if not _connected(cells):
            raise ValueError("polyomino must be 4-connected")

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell: Cell) -> bool:
        return cell in self.cells

    def bounding_rect(self) -> BoundingRect:
        rows = [r for r, _ in self.cells]
        cols = [c for _, c in self.cells]
        return BoundingRect(min(rows), max(rows), min(cols), max(cols))

    def normalized(self) -> "Polyomino":
        """Translate so min row and min col are both 0."""
        br = self.bounding_rect()
        return Polyomino(
            frozenset((r - br.min_row, c - br.min_col) for r, c in self.cells)
        )


def _connected(cells: frozenset) -> bool:
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        r, c = stack.pop()
        for dr, dc in _DELTAS:
            nb = (r + dr, c + dc)
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


@dataclass(frozen=True)
class CornerCensus:
    concave: int
    convex: int


@dataclass(frozen=True)
class BorderWalk:
    """Cyclic walk along the outer border.

    segments[i] is (start_point, direction index); turns[i] is the turn
    taken at the end of segment i (CONCAVE, STRAIGHT or CONVEX).
    """

    segments: tuple
    turns: tuple

    def census(self) -> CornerCensus:
        return CornerCensus(
            concave=sum(1 for t in self.turns if t == CONCAVE),
            convex=sum(1 for t in self.turns if t == CONVEX),
        )


def trace_outer_border(p: Polyomino) -> BorderWalk:
    """Trace the outer border counterclockwise from the canonical start.

    Hole boundaries are not visited.  The next direction at each lattice
    point is decided purely from the two cells ahead of the walk
    (front-right occupied: turn right; else front-left occupied: go
    straight; else: turn left), which keeps the exterior region glued to
    the walk's right even at pinch points.
    """
    cells = p.cells
    top_row = min(r for r, _ in cells)
    start_col = min(c for r, c in cells if r == top_row)
    start: tuple = ((top_row, start_col + 1), _W)

    # front-left / front-right cell offsets from the current lattice point
    # (vertex (r, c) touches cells NW=(r-1,c-1), NE=(r-1,c), SW=(r,c-1), SE=(r,c))
    fl_off = {_N: (-1, -1), _E: (-1, 0), _S: (0, 0), _W: (0, -1)}
    fr_off = {_N: (-1, 0), _E: (0, 0), _S: (0, -1), _W: (-1, -1)}

    segments = []
    turns = []
    pt, d = start
    while True:
        segments.append((pt, d))
        dr, dc = _DELTAS[d]
        pt = (pt[0] + dr, pt[1] + dc)
        fl = (pt[0] + fl_off[d][0], pt[1] + fl_off[d][1])
        fr = (pt[0] + fr_off[d][0], pt[1] + fr_off[d][1])
        if fr in cells:
            d = (d + 1) % 4
            turns.append(CONVEX)
        elif fl in cells:
            turns.append(STRAIGHT)
        else:
            d = (d - 1) % 4
            turns.append(CONCAVE)
        if (pt, d) == start:
            break
    return BorderWalk(segments=tuple(segments), turns=tuple(turns))


def corner_census(p: Polyomino) -> CornerCensus:
    """Concave/convex counts over the outer border; difference is 4."""
    return trace_outer_border(p).census()


def _delimiter_points(p: Polyomino) -> dict:
    cells = p.cells
    br = p.bounding_rect()
    top_cols = [c for r, c in cells if r == br.min_row]
    bot_cols = [c for r, c in cells if r == br.max_row]
    return {
        "top_left": (br.min_row, min(top_cols)),
        "top_right": (br.min_row, max(top_cols) + 1),
        "bottom_left": (br.max_row + 1, min(bot_cols)),
        "bottom_right": (br.max_row + 1, max(bot_cols) + 1),
    }


_SIDE_ARCS = {
    "left": ("top_left", "bottom_left"),
    "bottom": ("bottom_left", "bottom_right"),
    "right": ("bottom_right", "top_right"),
    "top": ("top_right", "top_left"),
}


def side_corner_census(p: Polyomino, side: str) -> CornerCensus:
    """Corner counts on the border arc facing one bounding-rectangle side.

    The arc runs counterclockwise between the two delimiting corners for
    that side (see module docstring); the delimiters themselves are
    excluded.  The two counts are always equal.
    """
    if side not in _SIDE_ARCS:
        raise ValueError(f"side must be one of {sorted(_SIDE_ARCS)}, got {side!r}")
    walk = trace_outer_border(p)
    points = _delimiter_points(p)
    # Index of the segment ending at each delimiter point.  Delimiter
    # points are simple corners: exactly one segment ends there.
    end_index = {}
    for k, (pt, d) in enumerate(walk.segments):
        dr, dc = _DELTAS[d]
        end_index[(pt[0] + dr, pt[1] + dc)] = k
    first_name, last_name = _SIDE_ARCS[side]
    i0 = end_index[points[first_name]]
    i1 = end_index[points[last_name]]
    m = len(walk.segments)
    concave = convex = 0
    k = (i0 + 1) % m
    while k != i1:
        if walk.turns[k] == CONCAVE:
            concave += 1
        elif walk.turns[k] == CONVEX:
            convex += 1
        k = (k + 1) % m
    return CornerCensus(concave=concave, convex=convex)


def _complement_components(p: Polyomino) -> list:
    br = p.bounding_rect()
    empty = {
        (r, c)
        for r in range(br.min_row, br.max_row + 1)
        for c in range(br.min_col, br.max_col + 1)
        if (r, c) not in p.cells
    }
    comps = []
    while empty:
        seed = next(iter(empty))
        comp = {seed}
        empty.remove(seed)
        stack = [seed]
        while stack:
            r, c = stack.pop()
            for dr, dc in _DELTAS:
                nb = (r + dr, c + dc)
                if nb in empty:
                    empty.remove(nb)
                    comp.add(nb)
                    stack.append(nb)
        comps.append(frozenset(comp))
    comps.sort(key=lambda comp: min(comp))
    return comps


def _touches_rect_boundary(comp: frozenset, br: BoundingRect) -> bool:
    return any(
        r == br.min_row or r == br.max_row or c == br.min_col or c == br.max_col
        for r, c in comp
    )


def find_holes(p: Polyomino) -> list:
    """Complement components inside the bounding rectangle that do not
    reach its boundary."""
    br = p.bounding_rect()
    return [
        Polyomino(comp)
        for comp in _complement_components(p)
        if not _touches_rect_boundary(comp, br)
    ]


def find_indentations(p: Polyomino) -> list:
    """Complement components inside the bounding rectangle that reach
    its boundary."""
    br = p.bounding_rect()
    return [
        Polyomino(comp)
        for comp in _complement_components(p)
        if _touches_rect_boundary(comp, br)
    ]


@lru_cache(maxsize=None)
def _fixed_polyominoes(size: int) -> frozenset:
    # Grow each (size-1)-omino by one neighbouring cell and canonicalise
    # by translation; rotations and reflections stay distinct.
    if size == 1:
        return frozenset({frozenset({(0, 0)})})
    out = set()
    for smaller in _fixed_polyominoes(size - 1):
        for r, c in smaller:
            for dr, dc in _DELTAS:
                nb = (r + dr, c + dc)
                if nb in smaller:
                    continue
                grown = set(smaller)
                grown.add(nb)
                min_r = min(rr for rr, _ in grown)
                min_c = min(cc for _, cc in grown)
                out.add(frozenset((rr - min_r, cc - min_c) for rr, cc in grown))
    return frozenset(out)


def enumerate_fixed_polyominoes(max_size: int) -> dict:
    """All fixed polyominoes per size, 1..max_size (capped at 10).

    Fixed means translations are identified but rotations/reflections
    are not: sizes 1..8 give 1, 2, 6, 19, 63, 216, 760, 2725 shapes.
    Each shape is normalized to min row = min col = 0 and the lists are
    sorted for reproducibility.
    """
    if not 1 <= max_size <= 10:
        raise ValueError(f"max_size must be in 1..10, got {max_size}")
    result = {}
    for size in range(1, max_size + 1):
        shapes = [Polyomino(cells) for cells in _fixed_polyominoes(size)]
        shapes.sort(key=lambda p: sorted(p.cells))
        result[size] = shapes
    return result
