"""Fast non-uniqueness certificates for large puzzles.

Exhaustive search is hopeless beyond small n, but one cheap structural
accident already forces a second reconstruction: two pieces whose side
tuples are cyclic shifts of each other can trade places (with
compensating rotations), and a piece whose tuple has a nontrivial
cyclic symmetry can be turned in place.  Either move reproduces every
shown colour while touching different physical half-edges, so the new
assembly is valid and its pairing differs from the original.

birthday_upper_bound gives the probability that no two pieces on the
chessboard half of the grid (cells with i+j even, which share no slots)
get identical tuples; when it is tiny, certificates almost always
exist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .core import (
    Assembly,
    GridColoring,
    Label,
    PieceBag,
    canonical_piece,
    identity_assembly,
    rotate_tuple,
)

__all__ = [
    "RotationPair",
    "find_rotation_equivalent_pair",
    "find_symmetric_piece",
    "build_swap_witness",
    "birthday_upper_bound",
]


@dataclass(frozen=True)
class RotationPair:
    """Labels of two pieces with rotate_tuple(sides_a, shift) == sides_b."""

    label_a: Label
    label_b: Label
    shift: int


def find_rotation_equivalent_pair(bag: PieceBag) -> Optional[RotationPair]:
    """First pair of distinct pieces equal up to rotation, in bag order.

    Single hash pass over canonical forms, O(len(bag)).  Returns None
    iff all canonical tuples are distinct.
    """
    seen: dict = {}
    for piece in bag:
        cp = canonical_piece(piece.sides)
        prev = seen.get(cp.canon)
        if prev is not None:
            label_a, shift_a = prev
            # rotate(a, shift_a) == canon == rotate(b, shift_b)
            shift = (shift_a - cp.shift) % 4
            return RotationPair(label_a=label_a, label_b=piece.label, shift=shift)
        seen[cp.canon] = (piece.label, cp.shift)
    return None


def find_symmetric_piece(bag: PieceBag) -> Optional[Label]:
    """First piece whose tuple has a nontrivial cyclic symmetry."""
    for piece in bag:
        if canonical_piece(piece.sides).symmetry_order > 1:
            return piece.label
    return None


def build_swap_witness(
    gc: GridColoring, certificate: Union[RotationPair, Label]
) -> Assembly:
    """Turn a certificate into a concrete witness assembly.

    For a RotationPair the two pieces swap cells with compensating
    rotations; for a symmetric piece's label the piece is rotated in
    place by its symmetry period.  Shown colours are unchanged either
    way, so the witness is valid; the physical pairing differs from the
    identity whenever n >= 2.  Raises ValueError for stale certificates
    (labels missing, tuples no longer matching) and for 1x1 puzzles,
    where no rearrangement can change the pairing.
    """
    n = gc.n
    if n < 2:
        raise ValueError("a 1x1 puzzle has no pairing-changing witness")
    base = identity_assembly(n)
    grid = [list(row) for row in base.cells]

    def sides_at(label: Label):
        i, j = label
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"stale certificate: label {label} not on the grid")
        return gc.piece_sides(i, j)

    if isinstance(certificate, RotationPair):
        a, b, shift = certificate.label_a, certificate.label_b, certificate.shift
        if a == b:
            raise ValueError("stale certificate: pair labels coincide")
        sides_a, sides_b = sides_at(a), sides_at(b)
        if rotate_tuple(sides_a, shift) != sides_b:
            raise ValueError("stale certificate: tuples are not shifts of each other")
        # b sits at a's cell showing sides_a; a sits at b's cell showing sides_b
        grid[a[0]][a[1]] = (b, (4 - shift) % 4)
        grid[b[0]][b[1]] = (a, shift)
    else:
        label = certificate
        cp = canonical_piece(sides_at(label))
        if cp.symmetry_order < 2:
            raise ValueError(f"stale certificate: piece {label} is not symmetric")
        period = 4 // cp.symmetry_order
        grid[label[0]][label[1]] = (label, period)
    return Assembly(n=n, cells=tuple(tuple(row) for row in grid))


def birthday_upper_bound(n: int, q: int) -> float:
    """Upper bound on Pr[no identical pair among the chessboard pieces].

    The ~n^2/2 pieces at cells with i+j even share no slots, so their
    tuples are iid uniform over q^4 values; collision-free probability
    is at most exp(-(n^4 - 2 n^2) / (8 q^4)).  Requires n >= 2.
    """
    if n < 2:
        raise ValueError(f"bound needs n >= 2, got {n}")
    if q < 1:
        raise ValueError(f"colour count must be >= 1, got {q}")
    return math.exp(-(n**4 - 2 * n**2) / (8 * q**4))
