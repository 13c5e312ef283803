"""Local rearrangement patches and their validity probabilities.

A patch models a small window of an alternative assembly: a set of
layout cells, each holding a piece taken from somewhere in a source
puzzle, with every piece keeping its orientation.  Pieces come from
`m` source components C_1..C_m; each component moves rigidly, so two
layout-adjacent cells whose pieces were already neighbours in the
source share one original slot and their edge is Original (always
monochromatic).  Every other layout edge is New: it presses together
two half-edges from different original slots, and is monochromatic only
if those slots happen to receive equal colours.  Slots are the random
variables; distinct slots are coloured iid uniform over [0, q).

The patch is valid when every New edge is monochromatic.  Three tools
quantify that:

* exact_monochromatic_probability: q^(-k) exactly, for a patch whose
  builder supplied a dependency-free ordering of k New edges (when each
  edge is revealed, at most one of its two slots has appeared before).
* monochromatic_probability_bound: q^(-ceil(k/2)) for any k New edges
  in which no edge has both colours already known.  Sharp: the swap
  pair below has two New edges but validity probability exactly 1/q.
* estimate_validity: seeded Monte Carlo over fresh colourings.

Builders cover five shapes (anchor set S, fill set U): ``straightline``
(S a row, U the row below it), ``convexcorners`` (S a staircase with
right-facing 270-degree corners, U the pieces tucked into them),
``hole`` (S a ring enclosing U), ``indentation`` (U against the grid
border, enclosed by S on 2 or 3 sides; the open sides face border
half-edges, which constrain nothing), and ``subsquare`` (no S; U a
square split into rigid tiles).  Plus ``swappair``: the two-edge
rearrangement that makes the ceil(k/2) bound tight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

Cell = tuple[int, int]

__all__ = [
    "ScaleConstants",
    "scale_constants",
    "PatchEdge",
    "PatchSpec",
    "DependencyOrderError",
    "build_patch",
    "straightline_patch",
    "convexcorners_patch",
    "hole_patch",
    "indentation_patch",
    "subsquare_patch",
    "swap_pair_patch",
    "exact_monochromatic_probability",
    "monochromatic_probability_bound",
    "hole_probability_bound",
    "estimate_validity",
]

PATCH_KINDS = (
    "straightline",
    "convexcorners",
    "hole",
    "indentation",
    "subsquare",
    "swappair",
)


@dataclass(frozen=True)
class ScaleConstants:
    """Size scales for the border analysis, exact in epsilon.

    run_length  = ceil(3 * (1 + 1/epsilon)): minimum straight border run.
    region_cap  = 4 * run_length^2: cap on a corner region's size.
    square_side = 4 * region_cap^2 / epsilon: side of the probe square,
    kept as an exact Fraction.  Valid for 0 < epsilon < 1/4, which
    forces run_length >= 16.
    """

    epsilon: Fraction
    run_length: int
    region_cap: int
    square_side: Fraction


def scale_constants(epsilon) -> ScaleConstants:
    """Evaluate the three scales exactly.

    Floats are read as their decimal literal (0.2 means 1/5); strings
    and Fractions are taken verbatim.
    """
    if isinstance(epsilon, float):
        eps = Fraction(str(epsilon))
    else:
        eps = Fraction(epsilon)
    if not Fraction(0) < eps < Fraction(1, 4):
        raise ValueError(f"epsilon must be in (0, 1/4), got {eps}")
    run_length = math.ceil(3 * (1 + 1 / eps))
    region_cap = 4 * run_length**2
    square_side = 4 * Fraction(region_cap) ** 2 / eps
    return ScaleConstants(
        epsilon=eps,
        run_length=run_length,
        region_cap=region_cap,
        square_side=square_side,
    )


@dataclass(frozen=True)
class PatchEdge:
    """One layout edge; slots identify the original colour variables."""

    cell_a: Cell
    side_a: int
    slot_a: int
    cell_b: Cell
    side_b: int
    slot_b: int
    new: bool
    crossing: bool  # one endpoint in the anchor set, one in the fill set
    known_a: bool = False
    known_b: bool = False


@dataclass
class PatchSpec:
    """A built patch: geometry, edge classification and metadata.

    anchor/fill are layout cell sets (fill may be disconnected for
    convexcorners); ordering, when present, lists indices of New edges
    in a dependency-free reveal order.  num_slots counts distinct
    original slots referenced by the edges.
    """

    kind: str
    anchor: frozenset
    fill: frozenset
    num_components: int
    edges: tuple
    ordering: Optional[tuple]
    num_slots: int
    component_of: dict = field(repr=False)
    metadata: dict = field(default_factory=dict)

    @property
    def cells(self) -> frozenset:
        return self.anchor | self.fill

    def new_edge_indices(self) -> tuple:
        return tuple(k for k, e in enumerate(self.edges) if e.new)

    def within_size_cap(self, constants: ScaleConstants) -> bool:
        return len(self.cells) <= constants.square_side**2


class DependencyOrderError(ValueError):
    """The patch has no usable dependency-free edge ordering; callers
    should fall back to monochromatic_probability_bound."""


def _validate_ordering(patch: PatchSpec) -> None:
    if patch.ordering is None:
        raise DependencyOrderError(f"{patch.kind} patch provides no edge ordering")
    revealed: set = set()
    for idx in patch.ordering:
        e = patch.edges[idx]
        if not e.new:
            raise DependencyOrderError(f"edge {idx} is Original, not New")
        hits = (e.slot_a in revealed) + (e.slot_b in revealed)
        if hits > 1:
            raise DependencyOrderError(
                f"edge {idx}: both slot colours already determined earlier"
            )
        revealed.add(e.slot_a)
        revealed.add(e.slot_b)


def exact_monochromatic_probability(patch: PatchSpec, q: int) -> float:
    """Exactly q^(-k) for the k edges of the patch's ordering.

    Revealing slot colours in the given order, each edge has at least
    one fresh slot, so it is monochromatic with probability exactly 1/q
    independent of everything before it.  Raises DependencyOrderError
    when the ordering is missing or some edge has both colours already
    determined.
    """
    if q < 1:
        raise ValueError(f"colour count must be >= 1, got {q}")
    _validate_ordering(patch)
    return float(q) ** (-len(patch.ordering))


def monochromatic_probability_bound(edges: Union[int, Sequence[PatchEdge]], q: int) -> float:
    """q^(-ceil(k/2)) for k New edges, none with both colours known.

    Any set of k simultaneous New edges contains at least ceil(k/2)
    whose reveal introduces a fresh slot.  Accepts either the edge
    count or the edges themselves; rejects an edge flagged as having
    both half-edge colours already known.
    """
    if q < 1:
        raise ValueError(f"colour count must be >= 1, got {q}")
    if isinstance(edges, int):
        m = edges
        if m < 0:
            raise ValueError(f"edge count must be >= 0, got {m}")
    else:
        for k, e in enumerate(edges):
            if e.known_a and e.known_b:
                raise ValueError(f"edge {k}: both half-edge colours flagged known")
        m = len(edges)
    return float(q) ** (-((m + 1) // 2))


def hole_probability_bound(patch: PatchSpec, q: int) -> float:
    """Validity bound q^(2 - 2m - b/4) for a hole patch.

    b is the number of anchor-fill border edges; the border of a
    connected fill is always even.
    """
    if patch.kind != "hole":
        raise ValueError(f"hole bound applies to hole patches, not {patch.kind!r}")
    if q < 1:
        raise ValueError(f"colour count must be >= 1, got {q}")
    b = sum(1 for e in patch.edges if e.crossing)
    if b % 2:
        raise ValueError(f"fill border size must be even, got {b}")
    m = patch.num_components
    return float(q) ** (2 - 2 * m - b / 4)


def estimate_validity(patch: PatchSpec, q: int, trials: int, seed: int) -> tuple:
    """Monte Carlo estimate of Pr[every New edge monochromatic].

    Draws each referenced slot iid uniform from [0, q) per trial and
    returns (estimate, standard_error).  Deterministic for a fixed
    seed; q = 1 gives exactly (1.0, 0.0).
    """
    if q < 1:
        raise ValueError(f"colour count must be >= 1, got {q}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    pairs = [(e.slot_a, e.slot_b) for e in patch.edges if e.new]
    slots = sorted({s for ab in pairs for s in ab})
    pos = {s: k for k, s in enumerate(slots)}
    rng = np.random.Generator(np.random.PCG64(seed))
    if not slots:
        return 1.0, 0.0
    draws = rng.integers(0, q, size=(trials, len(slots)), dtype=np.int64)
    ok = np.ones(trials, dtype=bool)
    for a, b in pairs:
        ok &= draws[:, pos[a]] == draws[:, pos[b]]
    est = float(ok.mean())
    se = math.sqrt(est * (1.0 - est) / trials)
    return est, se


# ----------------------------------------------------------------------
# Builders.  Each chooses concrete source positions for every piece;
# edge classification then falls out of the slot keys, and anchor-fill
# edges are checked to be New.

def _slot_key(orig: Cell, side: int) -> tuple:
    r, c = orig
    if side == 0:
        return ("h", r, c)
    if side == 1:
        return ("v", r, c + 1)
    if side == 2:
        return ("h", r + 1, c)
    return ("v", r, c)


def _assemble(
    kind: str,
    anchor: set,
    fill: set,
    orig: dict,
    comp: dict,
    ordering_pairs: Optional[list],
    metadata: Optional[dict] = None,
) -> PatchSpec:
    cells = set(anchor) | set(fill)
    if anchor & fill:
        raise ValueError("anchor and fill overlap")
    slot_ids: dict = {}

    def slot(cell: Cell, side: int) -> int:
        key = _slot_key(orig[cell], side)
        return slot_ids.setdefault(key, len(slot_ids))

    edges = []
    edge_at: dict = {}
    for cell in sorted(cells):
        r, c = cell
        for nb, sa, sb in (((r, c + 1), 1, 3), ((r + 1, c), 2, 0)):
            if nb in cells:
                slot_a = slot(cell, sa)
                slot_b = slot(nb, sb)
                crossing = (cell in anchor) != (nb in anchor)
                edge_at[frozenset((cell, nb))] = len(edges)
                edges.append(
                    PatchEdge(
                        cell_a=cell,
                        side_a=sa,
                        slot_a=slot_a,
                        cell_b=nb,
                        side_b=sb,
                        slot_b=slot_b,
                        new=slot_a != slot_b,
                        crossing=crossing,
                    )
                )
    for e in edges:
        if e.crossing and not e.new:
            raise ValueError("builder bug: anchor-fill edge came out Original")
    ordering = None
    if ordering_pairs is not None:
        ordering = tuple(edge_at[frozenset(p)] for p in ordering_pairs)
    spec = PatchSpec(
        kind=kind,
        anchor=frozenset(anchor),
        fill=frozenset(fill),
        num_components=max(comp.values()),
        edges=tuple(edges),
        ordering=ordering,
        num_slots=len(slot_ids),
        component_of=dict(comp),
        metadata=dict(metadata or {}),
    )
    if ordering is not None:
        _validate_ordering(spec)
    return spec


def _split_runs(count: int, parts: int) -> list:
    """Split `count` items into `parts` contiguous nonempty runs."""
    base, extra = divmod(count, parts)
    sizes = [base + (1 if k < extra else 0) for k in range(parts)]
    runs = []
    at = 0
    for s in sizes:
        runs.append(range(at, at + s))
        at += s
    return runs


def straightline_patch(length: int, components: int = 1) -> PatchSpec:
    """Anchor row of `length` cells with the fill row pressed under it.

    components=1 moves the far half of one long source row underneath
    the near half: every anchor-fill edge is New and independent, and
    the ordering covers them all.  components=m>=2 places one anchor
    overflow piece at the fill row's left end and fills the rest with
    m-1 rigid runs; the ordering lists the up/left edge pairs of the
    leftmost piece of each component from the third onward.
    """
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    if components < 1:
        raise ValueError(f"components must be >= 1, got {components}")
    anchor = {(0, c) for c in range(length)}
    fill = {(1, c) for c in range(length)}
    orig: dict = {}
    comp: dict = {}
    for c in range(length):
        orig[(0, c)] = (0, c)
        comp[(0, c)] = 1
    if components == 1:
        for c in range(length):
            orig[(1, c)] = (0, length + c)
            comp[(1, c)] = 1
        ordering_pairs = [(((0, c), (1, c))) for c in range(length)]
    else:
        if components > length:
            raise ValueError(
                f"{components} components will not fit a fill row of {length}"
            )
        orig[(1, 0)] = (0, length)  # anchor component's overflow piece
        comp[(1, 0)] = 1
        runs = _split_runs(length - 1, components - 1)
        firsts = []
        for k, run in enumerate(runs):
            who = 2 + k
            for idx, off in enumerate(run):
                cell = (1, 1 + off)
                orig[cell] = (10 * who, idx)
                comp[cell] = who
            firsts.append((1, 1 + run[0]))
        ordering_pairs = []
        for cell in firsts[1:]:  # skip the second component, as sized
            ordering_pairs.append(((0, cell[1]), cell))
            ordering_pairs.append(((cell[0], cell[1] - 1), cell))
    return _assemble("straightline", anchor, fill, orig, comp, ordering_pairs)


def convexcorners_patch(pairs: int, components: int = 2) -> PatchSpec:
    """Staircase anchor with 2*pairs right-facing 270-degree corners,
    one fill piece tucked into each corner.

    components=1 sources the fill pieces from a row attached to the
    staircase's own component; otherwise they are split over
    components-1 separate source rows.  No edge ordering is emitted.
    """
    if pairs < 1:
        raise ValueError(f"pairs must be >= 1, got {pairs}")
    corners = 2 * pairs
    steps = corners + 1
    if components < 1 or components > corners + 1:
        raise ValueError(f"components must be in 1..{corners + 1}, got {components}")
    anchor = set()
    orig: dict = {}
    comp: dict = {}
    for i in range(steps):
        for cell in ((i, steps - 1 - i), (i, steps - i)):
            anchor.add(cell)
            orig[cell] = (1000 + cell[0], cell[1])
            comp[cell] = 1
    fill_order = [(i, steps - i + 1) for i in range(1, steps)]
    fill = set(fill_order)
    if components == 1:
        # a source row hanging under the staircase's lowest step
        for k, cell in enumerate(fill_order):
            orig[cell] = (1000 + steps, k)
            comp[cell] = 1
    else:
        runs = _split_runs(corners, components - 1)
        for k, run in enumerate(runs):
            who = 2 + k
            for idx, off in enumerate(run):
                orig[fill_order[off]] = (2000 + 10 * who, idx)
                comp[fill_order[off]] = who
    spec = _assemble("convexcorners", anchor, fill, orig, comp, None)
    # every fill piece sits in a corner: one edge up, one edge left
    assert all(
        sum(1 for e in spec.edges if cell in (e.cell_a, e.cell_b)) == 2
        for cell in fill
    )
    return spec


def hole_patch(fill_rows: int, fill_cols: int, components: int = 1) -> PatchSpec:
    """Ring anchor fully enclosing a fill_rows x fill_cols fill block.

    components=1 sources the block from a slab attached to the ring's
    east side (all border edges independent, full ordering emitted);
    components=m>=2 splits the block into m-1 rigid reading-order runs
    and orders the up/left edges of each run's first cell.
    """
    if fill_rows < 1 or fill_cols < 1:
        raise ValueError("fill block must be at least 1x1")
    if components < 1:
        raise ValueError(f"components must be >= 1, got {components}")
    fill = {(r, c) for r in range(fill_rows) for c in range(fill_cols)}
    anchor = {
        (r, c)
        for r in range(-1, fill_rows + 1)
        for c in range(-1, fill_cols + 1)
        if (r, c) not in fill
    }
    orig = {cell: cell for cell in anchor}
    comp = {cell: 1 for cell in anchor}
    reading = sorted(fill)
    if components == 1:
        for r, c in reading:
            orig[(r, c)] = (r, fill_cols + 1 + c)
            comp[(r, c)] = 1
        ordering_pairs = []
        for cell in reading:
            r, c = cell
            for nb in ((r - 1, c), (r, c - 1), (r + 1, c), (r, c + 1)):
                if nb in anchor:
                    ordering_pairs.append((cell, nb))
    else:
        if components - 1 > len(fill):
            raise ValueError(
                f"{components} components will not fit a fill of {len(fill)}"
            )
        runs = _split_runs(len(fill), components - 1)
        ordering_pairs = []
        for k, run in enumerate(runs):
            who = 2 + k
            first = reading[run[0]]
            base_r, base_c = first
            for idx, off in enumerate(run):
                cell = reading[off]
                orig[cell] = (5000 + 1000 * who + cell[0], cell[1])
                comp[cell] = who
            ordering_pairs.append(((first[0] - 1, first[1]), first))
            ordering_pairs.append(((first[0], first[1] - 1), first))
    return _assemble("hole", anchor, fill, orig, comp, ordering_pairs)


def indentation_patch(
    fill_rows: int, fill_cols: int, components: int = 1, enclosed_sides: int = 3
) -> PatchSpec:
    """Fill block against the grid border, enclosed on 2 or 3 sides.

    enclosed_sides=3 leaves the fill's bottom on the border (anchor
    wraps top, left and right); enclosed_sides=2 models a corner
    placement (anchor wraps top and left only).  Open sides face border
    half-edges, which impose no colour constraint, so they produce no
    patch edges.
    """
    if fill_rows < 1 or fill_cols < 1:
        raise ValueError("fill block must be at least 1x1")
    if enclosed_sides not in (2, 3):
        raise ValueError(f"enclosed_sides must be 2 or 3, got {enclosed_sides}")
    if components < 1:
        raise ValueError(f"components must be >= 1, got {components}")
    fill = {(r, c) for r in range(fill_rows) for c in range(fill_cols)}
    anchor = {(r, -1) for r in range(fill_rows)}
    if enclosed_sides == 3:
        anchor |= {(-1, c) for c in range(-1, fill_cols + 1)}
        anchor |= {(r, fill_cols) for r in range(fill_rows)}
    else:
        anchor |= {(-1, c) for c in range(-1, fill_cols)}
    orig = {cell: cell for cell in anchor}
    comp = {cell: 1 for cell in anchor}
    reading = sorted(fill)
    if components == 1:
        for r, c in reading:
            orig[(r, c)] = (r, c - fill_cols - 1)
            comp[(r, c)] = 1
        ordering_pairs = []
        for cell in reading:
            r, c = cell
            for nb in ((r - 1, c), (r, c - 1), (r + 1, c), (r, c + 1)):
                if nb in anchor:
                    ordering_pairs.append((cell, nb))
    else:
        if components - 1 > len(fill):
            raise ValueError(
                f"{components} components will not fit a fill of {len(fill)}"
            )
        runs = _split_runs(len(fill), components - 1)
        ordering_pairs = []
        for k, run in enumerate(runs):
            who = 2 + k
            first = reading[run[0]]
            for off in run:
                cell = reading[off]
                orig[cell] = (5000 + 1000 * who + cell[0], cell[1])
                comp[cell] = who
            ordering_pairs.append(((first[0] - 1, first[1]), first))
            ordering_pairs.append(((first[0], first[1] - 1), first))
    return _assemble(
        "indentation",
        anchor,
        fill,
        orig,
        comp,
        ordering_pairs,
        metadata={"enclosed_sides": enclosed_sides},
    )


def subsquare_patch(side: int, tile: int = 1, components: Optional[int] = None) -> PatchSpec:
    """A bare side x side square split into rigid tile x tile tiles.

    There is no anchor set.  Tiles are the restricted rigid groups; the
    tile count is recorded as metadata["num_stable_sets"].  Components
    take contiguous groups of tiles, each component's tiles sourced as
    a vertical stack (so consecutive tiles of one component share
    original slots along their seam).  No edge ordering is emitted.
    """
    if side < 1 or tile < 1 or side % tile:
        raise ValueError(f"side {side} must be a positive multiple of tile {tile}")
    per = side // tile
    z = per * per
    m = z if components is None else components
    if not 1 <= m <= z:
        raise ValueError(f"components must be in 1..{z}, got {m}")
    fill = {(r, c) for r in range(side) for c in range(side)}
    tile_of = {}
    for r, c in fill:
        tile_of[(r, c)] = (r // tile) * per + (c // tile)
    comp_of_tile = {t: 1 + (t * m) // z for t in range(z)}
    stack_slot = {}
    seen_per_comp: dict = {}
    for t in range(z):
        who = comp_of_tile[t]
        stack_slot[t] = seen_per_comp.get(who, 0)
        seen_per_comp[who] = stack_slot[t] + 1
    orig = {}
    comp = {}
    for r, c in sorted(fill):
        t = tile_of[(r, c)]
        who = comp_of_tile[t]
        base_r = 9000 + 2000 * who + stack_slot[t] * tile
        orig[(r, c)] = (base_r + r % tile, c % tile)
        comp[(r, c)] = who
    return _assemble(
        "subsquare",
        set(),
        fill,
        orig,
        comp,
        None,
        metadata={"num_stable_sets": z, "tile": tile},
    )


def swap_pair_patch() -> PatchSpec:
    """Two source edges (a,a') and (b,b') reassembled as (a,b') and (b,a').

    The two New edges reuse the same two slots, so both are
    monochromatic iff the slots agree: probability exactly 1/q, not
    1/q^2.  This is the patch that makes the pairwise bound sharp; it
    admits no dependency-free ordering.
    """
    # layout rows 0 and 2 so the two pairs do not touch each other
    cells = {(0, 0): (0, 100), (0, 1): (10, 101), (2, 0): (10, 100), (2, 1): (0, 101)}
    comp = {(0, 0): 1, (2, 1): 1, (2, 0): 2, (0, 1): 2}
    return _assemble("swappair", set(), set(cells), dict(cells), comp, None)


def build_patch(kind: str, ell: int = 3, m: int = 1, enclosed_sides: int = 3,
                tile: int = 1) -> PatchSpec:
    """Dispatch on the patch kind with one size knob.

    ell is the row length (straightline), corner-pair count
    (convexcorners), fill block side (hole/indentation) or square side
    (subsquare); swappair has fixed size.
    """
    if kind == "straightline":
        return straightline_patch(length=ell, components=m)
    if kind == "convexcorners":
        return convexcorners_patch(pairs=ell, components=m)
    if kind == "hole":
        return hole_patch(fill_rows=ell, fill_cols=ell, components=m)
    if kind == "indentation":
        return indentation_patch(
            fill_rows=ell, fill_cols=ell, components=m, enclosed_sides=enclosed_sides
        )
    if kind == "subsquare":
        return subsquare_patch(side=ell, tile=tile, components=m)
    if kind == "swappair":
        return swap_pair_patch()
    raise ValueError(f"unknown patch kind {kind!r}; expected one of {PATCH_KINDS}")
