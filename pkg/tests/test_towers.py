from fractions import Fraction as F
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from towerloc.geom import Point, orient, segment_inside
from towerloc.harness.generators import fig13_fixture, gen_comb, gen_random_simple, gen_toth_counterexample
from towerloc.partition import GuardAnchor, PlacementKind, Side, partition
from towerloc.polygon import PolygonStar
from towerloc.towers import (
    TowerError,
    TowerPair,
    TowerTriple,
    choose_s,
    emit_towers,
    place_pair,
    place_triple,
)
from towerloc.visibility import kernel


def anchor(a, b, side, kind=PlacementKind.ON_SEGMENT):
    return GuardAnchor(0, kind, (Point(*a), Point(*b)), side)


class TestChooseS:
    @pytest.mark.parametrize("L2,s", [(F(1, 4), 1), (1, 1), (F(1, 100), 3), (100, 1), (F(1, 9), 1),
                                      (F(1, 81), 2)])
    def test_examples(self, L2, s):
        assert choose_s(L2) == s

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            choose_s(0)

    @given(st.fractions(min_value=F(1, 10**12), max_value=10**6))
    def test_minimal(self, L2):
        s = choose_s(L2)
        assert s >= 1 and F(1, 9 ** s) <= L2
        assert s == 1 or F(1, 9 ** (s - 1)) > L2


class TestPlacePair:
    def test_left(self):
        pair = place_pair(anchor((0, 0), (F(1, 2), 0), Side.LEFT))
        t1, t2 = pair.towers()
        assert (pair.m, pair.s, pair.distance) == (2, 1, F(2, 9))
        assert (t1.x, t1.y) == (0.0, 0.0)
        assert (t2.x, t2.y) == (float(F(2, 9)), 0.0)

    def test_right(self):
        pair = place_pair(anchor((0, 0), (F(1, 2), 0), Side.RIGHT))
        t1, t2 = pair.towers()
        assert (pair.m, pair.distance) == (1, F(1, 9))
        assert (t2.x, t2.y) == (float(F(1, 9)), 0.0)

    def test_decoder_direction_flips_m(self):
        # the decoder reads the line from the lexicographically smaller tower,
        # here tower 2, so the same served side needs the opposite parity
        pair = place_pair(anchor((1, 0), (0, 0), Side.LEFT))
        assert pair.m == 1 and pair.side is Side.RIGHT

    def test_vertex_pair_on_adjacent_edge(self):
        v, u = (F(3), F(1)), (F(5), F(2))
        pair = place_pair(anchor(v, u, Side.LEFT, PlacementKind.AT_CONVEX_VERTEX))
        t1, t2 = pair.towers()
        assert (t1.x, t1.y) == (3.0, 1.0)
        ex, ey = t2.decimal()
        # t2 lies on segment vu at the encoded distance
        assert abs(float((ex - 3) * 1 - (ey - 1) * 2)) < 1e-50
        assert pair.separation_squared() == pair.distance ** 2

    def test_zero_length_rejected(self):
        with pytest.raises(TowerError):
            place_pair(anchor((1, 1), (1, 1), Side.LEFT))

    @given(st.fractions(-50, 50, max_denominator=1000), st.fractions(-50, 50, max_denominator=1000),
           st.fractions(-50, 50, max_denominator=1000), st.fractions(-50, 50, max_denominator=1000),
           st.sampled_from([Side.LEFT, Side.RIGHT]))
    def test_exact_and_reduced(self, ax, ay, bx, by, side):
        if (ax, ay) == (bx, by):
            return
        pair = place_pair(anchor((ax, ay), (bx, by), side))
        assert pair.separation_squared() == F(pair.m, 3 ** (pair.s + 1)) ** 2
        assert gcd(pair.m, 3 ** (pair.s + 1)) == 1
        assert pair.distance ** 2 <= (bx - ax) ** 2 + (by - ay) ** 2
        assert (pair.m == 2) == (pair.side is Side.LEFT)


def _parity_ok(piece, pair):
    t1, t2 = pair.towers()
    u, w = (pair.anchor_a, pair.anchor_b) if (t1.x, t1.y) < (t2.x, t2.y) else (pair.anchor_b, pair.anchor_a)
    want = 1 if pair.m == 2 else -1
    return all(orient(u, w, v) != -want for v in piece.points)


class TestEmit:
    def test_comb_six(self):
        plan = emit_towers(partition(gen_comb(3)))
        assert len(plan.towers) == 6 and plan.warnings == []

    def test_convex_two(self):
        hexagon = PolygonStar([(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)])
        assert len(emit_towers(partition(hexagon)).towers) == 2

    def test_fig13_four(self):
        assert len(emit_towers(partition(fig13_fixture())).towers) == 4

    @pytest.mark.parametrize("p", [gen_comb(4, 1), gen_toth_counterexample(3), gen_random_simple(40, 5),
                                   gen_random_simple(25, 11)], ids=lambda p: p.name)
    def test_parity_and_coverage(self, p):
        pr = partition(p)
        plan = emit_towers(pr)
        assert len(plan.towers) <= 2 * p.n // 3
        for g in plan.groups:
            piece = pr.pieces[g.piece]
            assert isinstance(g, TowerPair)
            assert _parity_ok(piece, g)
            # tower 1 is exact; it must see every vertex of its piece inside P
            for v in piece.points:
                assert segment_inside(p.vertices, g.anchor_a, v)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(3, 40), st.integers(0, 10**6))
    def test_random_parity(self, n, seed):
        p = gen_random_simple(n, seed)
        pr = partition(p)
        plan = emit_towers(pr)
        assert len(plan.towers) <= 2 * n // 3
        for g in plan.groups:
            assert _parity_ok(pr.pieces[g.piece], g)

    def test_floats_are_nearest_doubles(self):
        plan = emit_towers(partition(gen_comb(2, 2)))
        for t in plan.towers:
            ex, ey = t.decimal()
            assert t.x == float(ex) and t.y == float(ey)


class TestTriple:
    def test_unit_square(self):
        tri = place_triple(PolygonStar([(0, 0), (1, 0), (1, 1), (0, 1)]))
        assert tri.points == (Point(F(1, 4), F(1, 4)), Point(F(3, 4), F(1, 4)), Point(F(1, 4), F(3, 4)))

    def test_degenerate_kernel_rejected(self):
        # radial spokes pin the kernel to the single point (0, 0)
        p = PolygonStar([(4, 0), (1, 0), (0, 4), (0, 1), (-4, 0), (-1, 0), (0, -4), (0, -1)])
        with pytest.raises(TowerError):
            place_triple(p)

    def test_pinwheel_interior(self):
        pin = PolygonStar([(4, 1), (1, 1), (-1, 4), (-1, 1), (-4, -1), (-1, -1), (1, -4), (1, -1)])
        tri = place_triple(pin)
        assert isinstance(tri, TowerTriple)
        a, b, c = tri.points
        assert orient(a, b, c) != 0
        k = kernel(pin)
        for q in tri.points:
            assert k.contains(q)
        assert len(tri.towers()) == 3
