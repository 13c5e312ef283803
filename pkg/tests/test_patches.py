"""Patch tests: scale constants, builders, probability rules, estimator."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jigsaw.patches import (
    DependencyOrderError,
    PatchEdge,
    build_patch,
    convexcorners_patch,
    estimate_validity,
    exact_monochromatic_probability,
    hole_patch,
    hole_probability_bound,
    indentation_patch,
    monochromatic_probability_bound,
    scale_constants,
    straightline_patch,
    subsquare_patch,
    swap_pair_patch,
)


class TestScaleConstants:
    def test_point_two(self):
        sc = scale_constants(0.2)
        assert sc.run_length == 18
        assert sc.region_cap == 1296
        assert sc.square_side == 33592320
        assert sc.epsilon == Fraction(1, 5)

    def test_float_read_as_decimal_literal(self):
        assert scale_constants(0.2) == scale_constants(Fraction(1, 5))
        assert scale_constants("0.2") == scale_constants(0.2)
        assert scale_constants(Fraction(1, 10)).run_length == 33

    def test_formulas_recomputed(self):
        for eps in (Fraction(1, 5), Fraction(1, 8), Fraction(24, 100), Fraction(1, 100)):
            sc = scale_constants(eps)
            ell = math.ceil(3 * (1 + 1 / eps))
            assert sc.run_length == ell
            assert sc.region_cap == 4 * ell * ell
            assert sc.square_side == Fraction(4 * (4 * ell * ell) ** 2, 1) / eps
            assert isinstance(sc.square_side, Fraction)

    @given(st.fractions(min_value=Fraction(1, 1000), max_value=Fraction(24, 100)))
    @settings(max_examples=60)
    def test_run_length_floor(self, eps):
        assert scale_constants(eps).run_length >= 16

    @pytest.mark.parametrize("bad", [0, 0.25, Fraction(1, 4), 0.3, -0.1, 1])
    def test_domain(self, bad):
        with pytest.raises(ValueError):
            scale_constants(bad)


class TestStraightline:
    def test_single_component_geometry(self):
        p = straightline_patch(3, components=1)
        assert len(p.anchor) == 3 and len(p.fill) == 3
        assert p.num_components == 1
        crossing = [e for e in p.edges if e.crossing]
        assert len(crossing) == 3
        assert all(e.new for e in crossing)
        # row-internal edges are all original
        for e in p.edges:
            if not e.crossing:
                assert not e.new
        assert len(p.ordering) == 3

    def test_two_components_five_new_edges(self):
        p = straightline_patch(4, components=2)
        assert p.num_components == 2
        new = p.new_edge_indices()
        assert len(new) == 5  # 4 crossing + 1 run boundary in the fill row
        assert sum(1 for e in p.edges if e.crossing and e.new) == 4
        assert p.ordering == ()

    def test_many_components_ordering(self):
        p = straightline_patch(7, components=4)
        assert len(p.ordering) == 2 * (4 - 2)
        # ordering passes the dependency check by construction
        assert exact_monochromatic_probability(p, 3) == pytest.approx(3.0 ** -4)

    def test_rejections(self):
        with pytest.raises(ValueError):
            straightline_patch(0)
        with pytest.raises(ValueError):
            straightline_patch(3, components=0)
        with pytest.raises(ValueError):
            straightline_patch(3, components=4)


class TestConvexCorners:
    def test_geometry(self):
        p = convexcorners_patch(2, components=3)
        assert len(p.fill) == 4  # 2*pairs corner pieces
        assert len(p.anchor) == 10  # 2 cells per staircase step
        assert p.num_components == 3
        assert p.ordering is None
        # each fill piece touches the anchor twice: up and left
        for cell in p.fill:
            touching = [e for e in p.edges if cell in (e.cell_a, e.cell_b)]
            assert len(touching) == 2
            assert all(e.crossing and e.new for e in touching)

    def test_single_component_allowed(self):
        p = convexcorners_patch(1, components=1)
        assert p.num_components == 1
        assert all(e.new for e in p.edges if e.crossing)

    def test_rejections(self):
        with pytest.raises(ValueError):
            convexcorners_patch(0)
        with pytest.raises(ValueError):
            convexcorners_patch(2, components=6)


class TestHole:
    def test_ring_geometry(self):
        p = hole_patch(2, 2, components=1)
        assert len(p.anchor) == 12
        assert len(p.fill) == 4
        border = [e for e in p.edges if e.crossing]
        assert len(border) == 8  # perimeter of the 2x2 block
        assert all(e.new for e in border)
        # ring-internal edges all original, fill-internal all original
        for e in p.edges:
            if not e.crossing:
                assert not e.new
        assert len(p.ordering) == 8

    def test_bound_values(self):
        p = hole_patch(2, 2, components=1)
        assert hole_probability_bound(p, 3) == pytest.approx(3.0 ** -2)
        p3 = hole_patch(2, 2, components=3)
        assert hole_probability_bound(p3, 3) == pytest.approx(3.0 ** -6)
        assert len(p3.ordering) == 4

    def test_exact_vs_bounds_dominance(self):
        p = hole_patch(2, 2, components=1)
        q = 4
        exact = exact_monochromatic_probability(p, q)
        pairwise = monochromatic_probability_bound(
            [p.edges[k] for k in p.new_edge_indices()], q
        )
        hole = hole_probability_bound(p, q)
        assert exact == pytest.approx(q ** -8.0)
        assert exact <= pairwise <= hole

    def test_wrong_kind_rejected(self):
        with pytest.raises(ValueError, match="hole"):
            hole_probability_bound(straightline_patch(3), 3)

    def test_rejections(self):
        with pytest.raises(ValueError):
            hole_patch(0, 2)
        with pytest.raises(ValueError):
            hole_patch(1, 1, components=3)


class TestIndentation:
    def test_three_sides(self):
        p = indentation_patch(2, 2, components=1, enclosed_sides=3)
        assert len(p.anchor) == 8
        new = [p.edges[k] for k in p.new_edge_indices()]
        assert len(new) == 6  # 2 up + 2 left + 2 right; bottom open
        assert exact_monochromatic_probability(p, 2) == pytest.approx(2.0 ** -6)

    def test_two_sides(self):
        p = indentation_patch(2, 2, components=1, enclosed_sides=2)
        assert len(p.anchor) == 5
        assert len(p.new_edge_indices()) == 4
        assert p.metadata["enclosed_sides"] == 2

    def test_multi_component(self):
        p = indentation_patch(2, 3, components=3, enclosed_sides=3)
        assert p.num_components == 3
        assert len(p.ordering) == 4
        exact_monochromatic_probability(p, 5)  # must not raise

    def test_rejections(self):
        with pytest.raises(ValueError):
            indentation_patch(2, 2, enclosed_sides=4)
        with pytest.raises(ValueError):
            indentation_patch(1, 2, components=4)


class TestSubsquare:
    def test_geometry(self):
        p = subsquare_patch(4, tile=2)
        assert len(p.anchor) == 0
        assert len(p.fill) == 16
        assert p.metadata["num_stable_sets"] == 4
        assert p.num_components == 4  # one per tile by default
        assert p.ordering is None

    def test_tile_interior_original(self):
        p = subsquare_patch(4, tile=2, components=2)
        for e in p.edges:
            same_tile = (e.cell_a[0] // 2, e.cell_a[1] // 2) == (
                e.cell_b[0] // 2,
                e.cell_b[1] // 2,
            )
            assert e.new == (not same_tile)

    def test_component_grouping(self):
        p = subsquare_patch(6, tile=2, components=3)
        assert p.num_components == 3
        sizes = {}
        for cell, who in p.component_of.items():
            sizes[who] = sizes.get(who, 0) + 1
        assert sum(sizes.values()) == 36
        assert set(sizes) == {1, 2, 3}

    def test_rejections(self):
        with pytest.raises(ValueError):
            subsquare_patch(5, tile=2)
        with pytest.raises(ValueError):
            subsquare_patch(4, tile=2, components=9)


class TestSwapPair:
    def test_two_new_edges_two_slots(self):
        p = swap_pair_patch()
        assert len(p.new_edge_indices()) == 2
        assert p.num_slots == 2
        assert p.num_components == 2
        assert p.ordering is None

    def test_forced_ordering_rejected(self):
        p = swap_pair_patch()
        p.ordering = tuple(p.new_edge_indices())
        with pytest.raises(DependencyOrderError, match="already determined"):
            exact_monochromatic_probability(p, 5)

    def test_bound_is_sharp(self):
        p = swap_pair_patch()
        edges = [p.edges[k] for k in p.new_edge_indices()]
        bound = monochromatic_probability_bound(edges, 5)
        assert bound == pytest.approx(0.2)
        est, se = estimate_validity(p, 5, 200_000, seed=31)
        assert abs(est - 0.2) <= 3 * se + 1e-12


class TestProbabilityOps:
    def test_no_ordering_raises(self):
        for p in (convexcorners_patch(1), subsquare_patch(2)):
            with pytest.raises(DependencyOrderError):
                exact_monochromatic_probability(p, 3)

    def test_duplicate_edge_in_ordering_rejected(self):
        p = straightline_patch(3)
        k = p.ordering[0]
        p.ordering = (k, k)
        with pytest.raises(DependencyOrderError):
            exact_monochromatic_probability(p, 3)

    def test_original_edge_in_ordering_rejected(self):
        p = straightline_patch(3)
        original = [k for k, e in enumerate(p.edges) if not e.new]
        p.ordering = (original[0],)
        with pytest.raises(DependencyOrderError, match="Original"):
            exact_monochromatic_probability(p, 3)

    def test_pairwise_bound_values(self):
        assert monochromatic_probability_bound(5, 3) == pytest.approx(1 / 27)
        assert monochromatic_probability_bound(0, 3) == 1.0
        assert monochromatic_probability_bound(1, 4) == 0.25
        assert monochromatic_probability_bound(2, 4) == 0.25

    def test_pairwise_bound_edges_match_int(self):
        p = hole_patch(2, 2)
        edges = [p.edges[k] for k in p.new_edge_indices()]
        assert monochromatic_probability_bound(edges, 7) == pytest.approx(
            monochromatic_probability_bound(len(edges), 7)
        )

    def test_pairwise_bound_rejects_fully_known_edge(self):
        e = PatchEdge((0, 0), 1, 0, (0, 1), 3, 1, new=True, crossing=False,
                      known_a=True, known_b=True)
        with pytest.raises(ValueError, match="known"):
            monochromatic_probability_bound([e], 5)
        with pytest.raises(ValueError):
            monochromatic_probability_bound(-1, 5)

    def test_exact_beats_pairwise_on_full_orderings(self):
        for p in (straightline_patch(4), hole_patch(1, 2), indentation_patch(1, 1)):
            q = 3
            exact = exact_monochromatic_probability(p, q)
            bound = monochromatic_probability_bound(
                [p.edges[k] for k in p.new_edge_indices()], q
            )
            assert exact <= bound + 1e-15


class TestEstimator:
    def test_matches_exact_straightline(self):
        p = straightline_patch(3)
        est, se = estimate_validity(p, 4, 100_000, seed=17)
        assert abs(est - 1 / 64) <= 3 * se

    def test_matches_exact_hole(self):
        p = hole_patch(1, 1)
        est, se = estimate_validity(p, 3, 100_000, seed=23)
        assert abs(est - 3.0 ** -4) <= 3 * se

    def test_matches_exact_indentation(self):
        p = indentation_patch(1, 2, enclosed_sides=3)
        est, se = estimate_validity(p, 2, 100_000, seed=29)
        exact = exact_monochromatic_probability(p, 2)
        assert exact == pytest.approx(2.0 ** -4)
        assert abs(est - exact) <= 3 * se

    def test_q1_certain(self):
        assert estimate_validity(straightline_patch(4), 1, 1000, seed=1) == (1.0, 0.0)

    def test_deterministic(self):
        p = hole_patch(2, 2)
        a = estimate_validity(p, 3, 20_000, seed=5)
        b = estimate_validity(p, 3, 20_000, seed=5)
        c = estimate_validity(p, 3, 20_000, seed=6)
        assert a == b
        assert a != c

    def test_validation(self):
        p = straightline_patch(2)
        with pytest.raises(ValueError):
            estimate_validity(p, 0, 100, seed=0)
        with pytest.raises(ValueError):
            estimate_validity(p, 3, 0, seed=0)


class TestBuildDispatch:
    def test_all_kinds(self):
        assert build_patch("straightline", ell=3).kind == "straightline"
        assert build_patch("convexcorners", ell=2, m=2).kind == "convexcorners"
        assert build_patch("hole", ell=2).kind == "hole"
        assert build_patch("indentation", ell=2, enclosed_sides=2).kind == "indentation"
        assert build_patch("subsquare", ell=4, tile=2, m=2).kind == "subsquare"
        assert build_patch("swappair").kind == "swappair"

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown patch kind"):
            build_patch("pinstripe")

    def test_size_cap(self):
        sc = scale_constants(0.2)
        assert straightline_patch(10).within_size_cap(sc)

    def test_components_metadata_consistent(self):
        for p in (
            straightline_patch(5, components=3),
            hole_patch(2, 3, components=4),
            subsquare_patch(4, tile=1, components=5),
        ):
            assert set(p.component_of.values()) == set(range(1, p.num_components + 1))
            assert set(p.component_of) == set(p.cells)
