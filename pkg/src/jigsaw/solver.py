"""Exact assembly counting and the uniqueness decision.

decide_unique rests on a rigidity fact about the grid: an assembly
reproduces the original half-edge pairing if and only if it is one of
the four global rotations of the identity placement.  Those four are
always valid, so for n >= 2 a puzzle has a unique reconstruction (up to
rotating the finished puzzle) exactly when the raw count of valid
(placement, rotation) assemblies is 4.  For n = 1 the count is always 4
and every rotation shows the same border, so a 1x1 puzzle is Unique.

The search stops at the 5th assembly when deciding uniqueness; among
any 5 distinct valid assemblies at least one is not a global rotation
of the identity and serves as the non-uniqueness witness.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .core import (
    Assembly,
    EdgePairing,
    GridColoring,
    Label,
    PieceBag,
    Sides,
    edge_pairing,
    identity_assembly,
    pieces_of,
    rotate_tuple,
)

DEFAULT_COUNT_LIMIT = 1_000_000
DEFAULT_NODE_BUDGET = 50_000_000

__all__ = [
    "CompatIndex",
    "build_index",
    "ValidCount",
    "count_valid",
    "enumerate_assemblies",
    "UniquenessVerdict",
    "decide_unique",
    "verify_assembly",
    "write_witness",
    "read_witness",
    "WitnessFormatError",
]


class WitnessFormatError(ValueError):
    """Raised when witness text does not parse."""


@dataclass(frozen=True)
class CompatIndex:
    """Candidate lookup keyed by demanded (top, left) shown colours.

    lookup(top=None, ...) treats that constraint as a wildcard.  Every
    list is sorted by (label, rotation) so search order is reproducible.
    """

    exact: dict
    by_top: dict
    by_left: dict
    all_items: tuple

    def lookup(self, top: Optional[int] = None, left: Optional[int] = None) -> tuple:
        if top is None and left is None:
            return self.all_items
        if top is None:
            return self.by_left.get(left, ())
        if left is None:
            return self.by_top.get(top, ())
        return self.exact.get((top, left), ())


def build_index(bag: PieceBag) -> CompatIndex:
    exact: dict = {}
    by_top: dict = {}
    by_left: dict = {}
    everything = []
    for piece in sorted(bag, key=lambda p: p.label):
        for r in range(4):
            shown = rotate_tuple(piece.sides, r)
            entry = (piece.label, r)
            everything.append(entry)
            exact.setdefault((shown[0], shown[3]), []).append(entry)
            by_top.setdefault(shown[0], []).append(entry)
            by_left.setdefault(shown[3], []).append(entry)
    return CompatIndex(
        exact={k: tuple(v) for k, v in exact.items()},
        by_top={k: tuple(v) for k, v in by_top.items()},
        by_left={k: tuple(v) for k, v in by_left.items()},
        all_items=tuple(everything),
    )


class _SearchPlan:
    """Flat-array form of a piece bag for the kernel in kernels.py."""

    def __init__(self, bag: PieceBag, n: int):
        if len(bag) != n * n:
            raise ValueError(f"bag has {len(bag)} pieces, expected {n * n}")
        self.n = n
        self.pieces = sorted(bag, key=lambda p: p.label)
        colors = sorted({c for p in self.pieces for c in p.sides})
        cmap = {c: k for k, c in enumerate(colors)}
        C = len(colors)
        self.num_colors = C
        P = n * n
        tops = np.zeros(4 * P, dtype=np.int64)
        rights = np.zeros(4 * P, dtype=np.int64)
        bottoms = np.zeros(4 * P, dtype=np.int64)
        lefts = np.zeros(4 * P, dtype=np.int64)
        for pi, piece in enumerate(self.pieces):
            for r in range(4):
                shown = rotate_tuple(piece.sides, r)
                it = pi * 4 + r
                tops[it] = cmap[shown[0]]
                rights[it] = cmap[shown[1]]
                bottoms[it] = cmap[shown[2]]
                lefts[it] = cmap[shown[3]]
        self.bottoms = bottoms
        self.rights = rights

        all_items = list(range(4 * P))
        l_buckets: list[list[int]] = [[] for _ in range(C)]
        t_buckets: list[list[int]] = [[] for _ in range(C)]
        tl_buckets: list[list[int]] = [[] for _ in range(C * C)]
        for it in all_items:
            l_buckets[lefts[it]].append(it)
            t_buckets[tops[it]].append(it)
            tl_buckets[tops[it] * C + lefts[it]].append(it)

        items = list(all_items)
        l_start = np.zeros(C + 1, dtype=np.int64)
        for c in range(C):
            l_start[c] = len(items)
            items.extend(l_buckets[c])
        l_start[C] = len(items)
        t_start = np.zeros(C + 1, dtype=np.int64)
        for c in range(C):
            t_start[c] = len(items)
            items.extend(t_buckets[c])
        t_start[C] = len(items)
        tl_start = np.zeros(C * C + 1, dtype=np.int64)
        for k in range(C * C):
            tl_start[k] = len(items)
            items.extend(tl_buckets[k])
        tl_start[C * C] = len(items)
        self.items = np.array(items, dtype=np.int64)
        self.l_start = l_start
        self.t_start = t_start
        self.tl_start = tl_start

    def run(self, limit: int, budget: int, max_store: int):
        sols = np.zeros((max_store, self.n * self.n), dtype=np.int64)
        status, count, nodes, stored = kernels.search(
            self.n,
            self.items,
            self.l_start,
            self.t_start,
            self.tl_start,
            self.num_colors,
            self.bottoms,
            self.rights,
            limit,
            budget,
            max_store,
            sols,
        )
        return status, count, nodes, stored, sols

    def assembly_from_items(self, row: np.ndarray) -> Assembly:
        n = self.n
        cells = []
        for i in range(n):
            cells.append(
                tuple(
                    (self.pieces[int(row[i * n + j]) >> 2].label, int(row[i * n + j]) & 3)
                    for j in range(n)
                )
            )
        return Assembly(n=n, cells=tuple(cells))


@dataclass(frozen=True)
class ValidCount:
    """count is exact when exact=True, otherwise a '>= count' early exit."""

    count: int
    exact: bool


def count_valid(bag: PieceBag, n: int, limit: int = DEFAULT_COUNT_LIMIT) -> ValidCount:
    """Count valid assemblies, stopping once `limit` are found."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    plan = _SearchPlan(bag, n)
    status, count, _, _, _ = plan.run(limit=limit, budget=2**62, max_store=0)
    return ValidCount(count=count, exact=status == kernels.STATUS_COMPLETE)


def enumerate_assemblies(bag: PieceBag, n: int, limit: int = 10_000) -> list[Assembly]:
    """All valid assemblies (at most `limit`), in search order."""
    plan = _SearchPlan(bag, n)
    status, count, _, stored, sols = plan.run(limit=limit, budget=2**62, max_store=limit)
    return [plan.assembly_from_items(sols[k]) for k in range(stored)]


@dataclass(frozen=True)
class UniquenessVerdict:
    kind: str  # "unique" | "nonunique" | "undetermined"
    witness: Optional[Assembly] = None
    nodes: int = 0
    reason: str = ""

    @property
    def is_unique(self) -> bool:
        return self.kind == "unique"


def decide_unique(gc: GridColoring, budget: int = DEFAULT_NODE_BUDGET) -> UniquenessVerdict:
    """Decide whether gc rebuilds only as itself (up to global rotation).

    NonUnique verdicts carry a valid witness assembly whose half-edge
    pairing differs from the original.  If the node budget runs out the
    verdict is Undetermined; raising the budget can only turn
    Undetermined into a definite answer, never flip a definite one.
    """
    bag = pieces_of(gc)
    plan = _SearchPlan(bag, gc.n)
    status, count, nodes, stored, sols = plan.run(limit=5, budget=budget, max_store=5)
    if status == kernels.STATUS_BUDGET:
        return UniquenessVerdict(
            kind="undetermined",
            nodes=nodes,
            reason=f"node budget {budget} exhausted after {count} assemblies",
        )
    if status == kernels.STATUS_COMPLETE and count == 4:
        return UniquenessVerdict(kind="unique", nodes=nodes)
    # Raw count exceeds the four global rotations: pick the first found
    # assembly that realises a different pairing.
    original = edge_pairing(identity_assembly(gc.n))
    for k in range(stored):
        asm = plan.assembly_from_items(sols[k])
        if edge_pairing(asm) != original:
            return UniquenessVerdict(kind="nonunique", witness=asm, nodes=nodes)
    raise AssertionError("search reported extra assemblies but no distinct pairing")


def verify_assembly(bag: PieceBag, asm: Assembly) -> bool:
    """Check an assembly directly against the bag, without any index.

    Every piece must be used exactly once and every internal edge must
    show one colour on both sides.  Label mismatches raise ValueError;
    colour mismatches just return False.
    """
    by_label = bag.by_label()
    seen = set()
    for row in asm.cells:
        for label, _ in row:
            if label not in by_label:
                raise ValueError(f"assembly uses unknown label {label}")
            if label in seen:
                raise ValueError(f"assembly repeats label {label}")
            seen.add(label)
    if len(seen) != len(bag):
        raise ValueError("assembly does not use every piece")
    n = asm.n
    shown = [
        [rotate_tuple(by_label[label].sides, r) for (label, r) in row]
        for row in asm.cells
    ]
    for i in range(n):
        for j in range(n):
            if j + 1 < n and shown[i][j][1] != shown[i][j + 1][3]:
                return False
            if i + 1 < n and shown[i][j][2] != shown[i + 1][j][0]:
                return False
    return True


def write_witness(asm: Assembly) -> str:
    """Witness text: n lines of n entries ``i,j:r``, row-major."""
    lines = []
    for row in asm.cells:
        lines.append(" ".join(f"{lab[0]},{lab[1]}:{r}" for lab, r in row))
    return "\n".join(lines) + "\n"


_ENTRY_RE = re.compile(r"^(-?\d+),(-?\d+):(\d+)$")


def read_witness(text: str) -> Assembly:
    """Parse witness text; inverse of write_witness."""
    lines = [ln for ln in text.split("\n") if ln.strip()]
    n = len(lines)
    if n == 0:
        raise WitnessFormatError("witness is empty")
    cells = []
    for li, line in enumerate(lines, start=1):
        toks = line.split()
        if len(toks) != n:
            raise WitnessFormatError(
                f"witness line {li}: expected {n} entries, got {len(toks)}"
            )
        row = []
        for ti, tok in enumerate(toks, start=1):
            m = _ENTRY_RE.match(tok)
            if not m:
                raise WitnessFormatError(
                    f"witness line {li}, entry {ti}: expected 'i,j:r', got {tok!r}"
                )
            i, j, r = int(m.group(1)), int(m.group(2)), int(m.group(3))
            if r > 3:
                raise WitnessFormatError(
                    f"witness line {li}, entry {ti}: rotation {r} outside 0..3"
                )
            row.append(((i, j), r))
        cells.append(tuple(row))
    return Assembly(n=n, cells=tuple(cells))
