"""Core model tests: pieces, rotations, pairings, file format, RNG."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jigsaw.core import (
    Assembly,
    GridColoring,
    Piece,
    PieceBag,
    PuzzleFormatError,
    canonical_piece,
    edge_pairing,
    generate_puzzle,
    identity_assembly,
    pieces_of,
    read_puzzle,
    rotate_assembly,
    rotate_tuple,
    write_puzzle,
)

# Hand-built 2x2 instance with every slot a distinct colour 0..11:
# h rows (0,1),(2,3),(4,5); v rows (6,7,8),(9,10,11).
HAND_H = [[0, 1], [2, 3], [4, 5]]
HAND_V = [[6, 7, 8], [9, 10, 11]]


def hand_gc() -> GridColoring:
    return GridColoring(n=2, q=12, h=np.array(HAND_H), v=np.array(HAND_V))


sides_st = st.tuples(*[st.integers(0, 9)] * 4)
rot_st = st.integers(0, 3)


class TestPieces:
    def test_hand_built_piece_tuples(self):
        bag = pieces_of(hand_gc())
        expected = {
            (0, 0): (0, 7, 2, 6),
            (0, 1): (1, 8, 3, 7),
            (1, 0): (2, 10, 4, 9),
            (1, 1): (3, 11, 5, 10),
        }
        assert {p.label: p.sides for p in bag} == expected

    def test_labels_row_major(self):
        bag = pieces_of(generate_puzzle(3, 4, seed=0))
        assert [p.label for p in bag] == [(i, j) for i in range(3) for j in range(3)]

    def test_slot_count(self):
        for n in (1, 2, 5, 30):
            gc = generate_puzzle(n, 3, seed=1)
            assert gc.slot_count == 2 * n * n + 2 * n
            assert gc.h.size + gc.v.size == gc.slot_count

    @given(st.integers(2, 5), st.integers(1, 6), st.integers(0, 2**32))
    @settings(max_examples=40, deadline=None)
    def test_adjacent_pieces_share_slot_colours(self, n, q, seed):
        gc = generate_puzzle(n, q, seed)
        bag = pieces_of(gc).by_label()
        for i in range(n):
            for j in range(n):
                t = bag[(i, j)].sides
                if j + 1 < n:
                    assert t[1] == bag[(i, j + 1)].sides[3]
                if i + 1 < n:
                    assert t[2] == bag[(i + 1, j)].sides[0]

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValueError, match="unique"):
            PieceBag(pieces=(Piece((0, 0), (1, 1, 1, 1)), Piece((0, 0), (2, 2, 2, 2))))


class TestRotation:
    def test_rotate_examples(self):
        t = (3, 1, 2, 1)
        assert rotate_tuple(t, 0) == (3, 1, 2, 1)
        assert rotate_tuple(t, 1) == (1, 3, 1, 2)
        assert rotate_tuple(t, 2) == (2, 1, 3, 1)
        assert rotate_tuple(t, 3) == (1, 2, 1, 3)

    def test_rotate_rejects_bad_rotation(self):
        for r in (-1, 4, 7):
            with pytest.raises(ValueError):
                rotate_tuple((0, 1, 2, 3), r)

    @given(sides_st, rot_st, rot_st)
    def test_rotation_group_action(self, t, a, b):
        assert rotate_tuple(rotate_tuple(t, a), b) == rotate_tuple(t, (a + b) % 4)

    @given(sides_st, rot_st)
    def test_shown_side_formula(self, t, r):
        shown = rotate_tuple(t, r)
        for d in range(4):
            assert shown[d] == t[(d - r) % 4]

    def test_canonical_examples(self):
        cp = canonical_piece((3, 1, 2, 1))
        assert cp.canon == (1, 2, 1, 3)
        assert cp.shift == 3
        assert cp.symmetry_order == 1
        assert rotate_tuple((3, 1, 2, 1), cp.shift) == cp.canon

        assert canonical_piece((5, 5, 5, 5)).symmetry_order == 4
        cp2 = canonical_piece((1, 2, 1, 2))
        assert cp2.symmetry_order == 2
        assert cp2.canon == (1, 2, 1, 2)
        assert cp2.shift == 0

    @given(sides_st, rot_st)
    def test_canonical_rotation_invariant(self, t, r):
        assert canonical_piece(rotate_tuple(t, r)).canon == canonical_piece(t).canon

    @given(sides_st)
    def test_canonical_is_least_shift(self, t):
        cp = canonical_piece(t)
        shifts = [rotate_tuple(t, r) for r in range(4)]
        assert cp.canon == min(shifts)
        assert shifts[cp.shift] == cp.canon
        # stabiliser size times orbit size is 4
        assert cp.symmetry_order * len(set(shifts)) == 4


class TestAssembly:
    def test_identity_assembly(self):
        asm = identity_assembly(2)
        assert asm.cells[0][0] == ((0, 0), 0)
        assert asm.cells[1][1] == ((1, 1), 0)

    def test_rotation_moves_cells(self):
        asm = rotate_assembly(identity_assembly(3))
        # piece from (i, j) lands at (j, n-1-i) with rotation 1
        assert asm.cells[0][2] == ((0, 0), 1)
        assert asm.cells[2][2] == ((0, 2), 1)
        assert asm.cells[0][0] == ((2, 0), 1)
        assert asm.cells[1][1] == ((1, 1), 1)

    def test_four_rotations_return(self):
        asm = identity_assembly(4)
        out = asm
        for _ in range(4):
            out = rotate_assembly(out)
        assert out == asm

    def test_bad_rotation_rejected(self):
        with pytest.raises(ValueError, match="rotation"):
            Assembly(n=1, cells=((((0, 0), 5),),))

    def test_bad_shape_rejected(self):
        with pytest.raises(ValueError, match="grid"):
            Assembly(n=2, cells=((((0, 0), 0),),))


class TestEdgePairing:
    def test_sizes(self):
        for n in (1, 2, 3, 5):
            ep = edge_pairing(identity_assembly(n))
            assert len(ep.pairs) == 2 * n * (n - 1)
            assert len(ep.singles) == 4 * n

    def test_identity_pairs_sample(self):
        ep = edge_pairing(identity_assembly(2))
        assert frozenset((((0, 0), 1), ((0, 1), 3))) in ep.pairs
        assert frozenset((((0, 0), 2), ((1, 0), 0))) in ep.pairs
        assert ((0, 0), 0) in ep.singles
        assert ((1, 1), 2) in ep.singles

    @given(st.integers(1, 5))
    @settings(max_examples=10, deadline=None)
    def test_invariant_under_global_rotation(self, n):
        asm = identity_assembly(n)
        ep0 = edge_pairing(asm)
        for _ in range(4):
            asm = rotate_assembly(asm)
            assert edge_pairing(asm) == ep0

    def test_swapping_two_pieces_changes_pairing(self):
        asm = identity_assembly(2)
        cells = [list(row) for row in asm.cells]
        cells[0][0], cells[0][1] = cells[0][1], cells[0][0]
        swapped = Assembly(n=2, cells=tuple(tuple(r) for r in cells))
        assert edge_pairing(swapped) != edge_pairing(asm)


class TestGenerate:
    def test_deterministic(self):
        a = generate_puzzle(4, 8, seed=123)
        b = generate_puzzle(4, 8, seed=123)
        assert a == b
        assert a != generate_puzzle(4, 8, seed=124)

    def test_shapes_and_range(self):
        gc = generate_puzzle(5, 3, seed=0)
        assert gc.h.shape == (6, 5) and gc.v.shape == (5, 6)
        assert gc.h.min() >= 0 and gc.h.max() < 3

    def test_arrays_read_only(self):
        gc = generate_puzzle(2, 2, seed=0)
        with pytest.raises(ValueError):
            gc.h[0, 0] = 1

    def test_validation(self):
        with pytest.raises(ValueError):
            generate_puzzle(0, 2, seed=0)
        with pytest.raises(ValueError):
            generate_puzzle(2, 0, seed=0)
        with pytest.raises(ValueError):
            GridColoring(n=2, q=2, h=np.zeros((2, 2), int), v=np.zeros((2, 3), int))
        with pytest.raises(ValueError):
            GridColoring(n=2, q=2, h=np.full((3, 2), 2), v=np.zeros((2, 3), int))

    def test_per_slot_uniformity(self):
        # chi-square per slot and pooled, q=4, n=8, 4000 seeded draws.
        # Thresholds are the chi2(3) tail at 1e-6 (30.66); with 144+1
        # statistics a false alarm has probability < 2e-4.
        n, q, draws = 8, 4, 4000
        hs = np.empty((draws, n + 1, n), dtype=np.int64)
        vs = np.empty((draws, n, n + 1), dtype=np.int64)
        for s in range(draws):
            gc = generate_puzzle(n, q, seed=900_000 + s)
            hs[s] = gc.h
            vs[s] = gc.v
        flat = np.concatenate([hs.reshape(draws, -1), vs.reshape(draws, -1)], axis=1)
        counts = np.stack([(flat == c).sum(axis=0) for c in range(q)])  # (q, slots)
        expected = draws / q
        chi2 = (((counts - expected) ** 2) / expected).sum(axis=0)
        crit = 30.66  # chi2(3).isf(1e-6)
        assert chi2.max() < crit, f"slot {chi2.argmax()} chi2={chi2.max():.2f}"
        pooled = counts.sum(axis=1).astype(float)
        pooled_exp = pooled.sum() / q
        pooled_chi2 = (((pooled - pooled_exp) ** 2) / pooled_exp).sum()
        assert pooled_chi2 < crit

    def test_seed_changes_all_regions(self):
        # different seeds should not share the h block while differing in v
        a = generate_puzzle(6, 5, seed=10)
        b = generate_puzzle(6, 5, seed=11)
        assert not np.array_equal(a.h, b.h)
        assert not np.array_equal(a.v, b.v)


class TestFileFormat:
    def test_write_exact_text(self):
        text = write_puzzle(hand_gc())
        assert text == "2 12\n0 1\n2 3\n4 5\n6 7 8\n9 10 11\n"

    def test_round_trip(self):
        for seed in range(5):
            gc = generate_puzzle(3, 7, seed=seed)
            assert read_puzzle(write_puzzle(gc)) == gc
        text = write_puzzle(generate_puzzle(4, 2, seed=9))
        assert write_puzzle(read_puzzle(text)) == text

    @given(st.integers(1, 6), st.integers(1, 9), st.integers(0, 2**32))
    @settings(max_examples=30, deadline=None)
    def test_round_trip_property(self, n, q, seed):
        gc = generate_puzzle(n, q, seed)
        assert read_puzzle(write_puzzle(gc)) == gc

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("2 12\n0 1\n2 3\n4 5\n6 7 8\n9 10 11", "newline"),
            ("", "newline"),
            ("\n", "expected 'n q'"),
            ("2\n", "expected 'n q'"),
            ("2 12\n0 1\n2 3\n4 5\n6 7 8\n", "expected 6 lines"),
            ("1 2\n0\n1\n0 2\n", "line 4, entry 2: colour 2 outside"),
            ("1 2\n0\nx\n0 1\n", "line 3, entry 1: expected an integer"),
            ("1 2\n0 9\n1\n0 1\n", "line 2: expected 1 entries"),
            ("0 4\n", "must be positive"),
            ("2 -1\n", "must be positive"),
        ],
    )
    def test_parse_diagnostics(self, text, fragment):
        with pytest.raises(PuzzleFormatError, match=None) as exc:
            read_puzzle(text)
        assert fragment in str(exc.value)

    def test_negative_colour_rejected(self):
        with pytest.raises(PuzzleFormatError, match="outside"):
            read_puzzle("1 2\n0\n-1\n0 1\n")
