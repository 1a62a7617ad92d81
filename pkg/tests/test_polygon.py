from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from towerloc.geom import Point, area2, orient
from towerloc.harness.generators import gen_random_simple
from towerloc.polygon import (
    CollinearTriple,
    Degenerate,
    DuplicateVertex,
    NodeKind,
    PolygonStar,
    SelfIntersecting,
    TooFewVertices,
    Triangulation,
    dual_graph,
    retriangulate_fan_nondegenerate,
    simplify,
    triangulate,
    validate_simple_polygon,
)

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


class TestValidate:
    def test_square_accepted(self):
        p = validate_simple_polygon(SQUARE)
        assert p.n == 4 and p.area2() == 2

    def test_clockwise_is_reoriented(self):
        p = validate_simple_polygon(SQUARE[::-1])
        assert p.area2() > 0

    def test_rejections(self):
        with pytest.raises(CollinearTriple):
            validate_simple_polygon([(0, 0), (1, 0), (2, 0), (1, 1)])
        with pytest.raises(SelfIntersecting):
            validate_simple_polygon([(0, 0), (1, 1), (1, 0), (0, 1)])
        with pytest.raises(DuplicateVertex):
            validate_simple_polygon([(0, 0), (1, 0), (0, 0), (0, 1)])
        with pytest.raises(TooFewVertices):
            validate_simple_polygon([(0, 0), (1, 0)])


class TestSimplify:
    def test_straight_angle_removed(self):
        p = PolygonStar([(0, 0), (1, 0), (2, 0), (2, 2), (0, 2)])
        assert simplify(p).points == tuple(Point(*v) for v in [(0, 0), (2, 0), (2, 2), (0, 2)])

    def test_square_fixed_point(self):
        p = PolygonStar(SQUARE)
        assert simplify(p) == p

    def test_spike_tip_removed_and_guarded(self):
        # (3, 0) is a zero-angle tip: edges to (2, 0) and back to (1, 0)
        p = PolygonStar([(0, 0), (1, 0), (3, 0), (2, 0), (2, 2), (0, 2)])
        s = simplify(p)
        assert Point(3, 0) not in s.points
        assert (Point(3, 0), Point(2, 0)) in s.guarded
        assert s.area2() == p.area2()

    def test_collapse(self):
        with pytest.raises(Degenerate):
            simplify(PolygonStar([(0, 0), (1, 0), (2, 0)]))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(3, 20), st.integers(0, 10**6))
    def test_idempotent(self, n, seed):
        p = gen_random_simple(n, seed).to_star()
        s = simplify(p)
        assert simplify(s) == s


class TestTriangulate:
    def test_quadrilateral(self):
        t = triangulate(PolygonStar([(0, 0), (2, 0), (3, 2), (0, 1)]))
        assert len(t.triangles) == 2 and len(t.diagonals) == 1

    def test_square_deterministic(self):
        t1 = triangulate(PolygonStar(SQUARE))
        t2 = triangulate(PolygonStar(SQUARE))
        assert t1.triangles == t2.triangles

    def test_vertex_on_chord_avoids_degenerate_when_possible(self):
        # the reflex vertex (2, 2) sits on the chord (0,0)-(4,4)
        t = triangulate(PolygonStar([(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)]))
        assert len(t.triangles) == 3
        assert t.degenerate == [False, False, False]

    @settings(max_examples=40, deadline=None)
    @given(st.integers(3, 25), st.integers(0, 10**6))
    def test_count_and_area(self, n, seed):
        p = gen_random_simple(n, seed).to_star()
        t = triangulate(p)
        assert len(t.triangles) == n - 2
        total = sum(area2([p.points[i] for i in tri]) for tri in t.triangles)
        assert total == p.area2()
        for tri, deg in zip(t.triangles, t.degenerate):
            assert deg == (orient(*(p.points[i] for i in tri)) == 0)


class TestDualGraph:
    def test_triangle(self):
        g = dual_graph(triangulate(PolygonStar([(0, 0), (1, 0), (0, 1)])))
        assert len(g.nodes) == 1 and g.edges == []

    def test_convex_hexagon_path(self):
        hexagon = [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)]
        g = dual_graph(triangulate(PolygonStar(hexagon)))
        assert len(g.nodes) == 4 and len(g.edges) == 3
        assert sorted(g.degree(i) for i in g.nodes) == [1, 1, 2, 2]
        assert [g.kinds[i] for i in g.leaves()] == [NodeKind.LONG_LEAF] * 2

    @settings(max_examples=30, deadline=None)
    @given(st.integers(4, 25), st.integers(0, 10**6))
    def test_tree(self, n, seed):
        g = dual_graph(triangulate(gen_random_simple(n, seed).to_star()))
        assert len(g.nodes) == n - 2
        assert len(g.edges) == n - 3


class TestFanRetriangulation:
    notched = PolygonStar([(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)])

    def test_flip_removes_degenerate(self):
        t = Triangulation(self.notched.points, [(0, 1, 2), (0, 2, 4), (2, 3, 4)], [(0, 2), (2, 4)],
                          [False, True, False])
        r = retriangulate_fan_nondegenerate(t, 0)
        assert len(r.triangles) == 3
        assert not any(r.degenerate)
        assert (2, 3, 4) in r.triangles
        total = sum(area2([r.points[i] for i in tri]) for tri in r.triangles)
        assert total == self.notched.area2()

    def test_nondegenerate_fan_unchanged(self):
        t = triangulate(self.notched)
        r = retriangulate_fan_nondegenerate(t, 1)
        assert sorted(r.triangles) == sorted(t.triangles)

    def test_reflex_apex_rejected(self):
        with pytest.raises(ValueError):
            retriangulate_fan_nondegenerate(triangulate(self.notched), 4)


def test_provenance_flags_length_checked():
    with pytest.raises(ValueError):
        PolygonStar([(0, 0), (1, 0), (0, 1)], [True, True])


def test_rational_input_kept_exact():
    p = validate_simple_polygon([("0", "0"), ("1/3", "0"), ("1/3", "1/7")])
    assert Point(F(1, 3), F(1, 7)) in p.vertices
