import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from towerloc.geom import (
    Circle,
    FloatPoint,
    LineRelation,
    Orientation,
    Point,
    SegmentRelation,
    Side,
    as_rational,
    circle_circle_intersection,
    cross,
    line_intersection,
    locate_point,
    orient,
    orientation,
    point_side_of_line,
    segment_inside,
    segments_intersect,
)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)
points = st.builds(Point, rationals, rationals)


def P(x, y):
    return Point(x, y)


class TestRational:
    def test_parse_forms(self):
        assert as_rational("3/7") == F(3, 7)
        assert as_rational("0.125") == F(1, 8)
        assert as_rational(0.1) == F(0.1)

    def test_reduced_form_is_canonical(self):
        assert as_rational("6/4") == F(3, 2)
        assert P("2/4", 1) == P("1/2", "3/3")
        assert hash(P("2/4", 1)) == hash(P("1/2", 1))

    @given(rationals, rationals)
    def test_add_sub_exact(self, a, b):
        assert (a + b) - b == a


class TestOrientation:
    def test_examples(self):
        assert orientation(P(0, 0), P(1, 0), P(0, 1)) is Orientation.COUNTERCLOCKWISE
        assert orientation(P(0, 0), P(1, 1), P(2, 2)) is Orientation.COLLINEAR
        assert orientation(P(0, 0), P(0, 1), P(1, 0)) is Orientation.CLOCKWISE

    def test_filter_near_degenerate(self):
        # a point off the line by 1e-30 is beyond any float filter
        eps = F(1, 10**30)
        assert orient(P(0, 0), P(1, 1), P(F(1, 3), F(1, 3) + eps)) == 1
        assert orient(P(0, 0), P(1, 1), P(F(1, 3), F(1, 3) - eps)) == -1
        assert orient(P(0, 0), P(10**20, 10**20 + 1), P(2 * 10**20, 2 * 10**20 + 2)) == 0

    @given(points, points, points)
    def test_antisymmetric(self, a, b, c):
        o = orient(a, b, c)
        assert orient(b, a, c) == -o
        assert orient(a, c, b) == -o
        assert orient(c, b, a) == -o

    @given(points, points, points)
    def test_matches_exact_cross_sign(self, a, b, c):
        v = cross(a, b, c)
        assert orient(a, b, c) == (v > 0) - (v < 0)


class TestSegments:
    def test_examples(self):
        r = segments_intersect(P(0, 0), P(2, 0), P(1, -1), P(1, 1))
        assert r.kind is SegmentRelation.PROPER_CROSS and r.points == (P(1, 0),)
        r = segments_intersect(P(0, 0), P(1, 0), P(1, 0), P(2, 0))
        assert r.kind is SegmentRelation.TOUCH and r.points == (P(1, 0),)
        r = segments_intersect(P(0, 0), P(2, 0), P(1, 0), P(3, 0))
        assert r.kind is SegmentRelation.OVERLAP and r.points == (P(1, 0), P(2, 0))

    def test_disjoint_and_t_junction(self):
        assert segments_intersect(P(0, 0), P(1, 0), P(0, 1), P(1, 1)).kind is SegmentRelation.DISJOINT
        r = segments_intersect(P(0, 0), P(2, 0), P(1, 0), P(1, 5))
        assert r.kind is SegmentRelation.TOUCH and r.points == (P(1, 0),)

    def test_zero_length_rejected(self):
        with pytest.raises(ValueError):
            segments_intersect(P(0, 0), P(0, 0), P(1, 0), P(2, 0))


class TestLines:
    def test_examples(self):
        assert line_intersection(P(1, 0), P(1, 5), P(0, 2), P(3, 2)) == P(1, 2)
        assert line_intersection(P(0, 0), P(1, 0), P(0, 1), P(1, 1)) is LineRelation.PARALLEL
        assert line_intersection(P(0, 0), P(1, 1), P(2, 2), P(3, 3)) is LineRelation.COINCIDENT

    @given(points, points, points, points)
    def test_result_on_both_lines(self, a1, a2, b1, b2):
        if a1 == a2 or b1 == b2:
            return
        r = line_intersection(a1, a2, b1, b2)
        if isinstance(r, Point):
            assert orient(a1, a2, r) == 0
            assert orient(b1, b2, r) == 0


class TestCircles:
    def test_tangent(self):
        (p,) = circle_circle_intersection(Circle(FloatPoint(0, 0), 1), Circle(FloatPoint(2, 0), 1))
        assert p == pytest.approx((1.0, 0.0), abs=1e-12)

    def test_two_points_left_first(self):
        left, right = circle_circle_intersection(Circle(FloatPoint(0, 0), 1), Circle(FloatPoint(1, 0), 1))
        assert left == pytest.approx((0.5, math.sqrt(3) / 2), abs=1e-15)
        assert right == pytest.approx((0.5, -math.sqrt(3) / 2), abs=1e-15)

    def test_disjoint(self):
        assert circle_circle_intersection(Circle(FloatPoint(0, 0), 1), Circle(FloatPoint(4, 0), 1)) == ()

    def test_concentric_rejected(self):
        with pytest.raises(ValueError):
            circle_circle_intersection(Circle(FloatPoint(0, 0), 1), Circle(FloatPoint(0, 0), 2))

    def test_negative_radius_rejected(self):
        with pytest.raises(ValueError):
            Circle(FloatPoint(0, 0), -1.0)

    @given(st.floats(-50, 50), st.floats(-50, 50), st.floats(-50, 50), st.floats(-50, 50),
           st.floats(-50, 50), st.floats(-50, 50))
    def test_points_on_both_circles_and_mirrored(self, x1, y1, x2, y2, px, py):
        c1, c2 = FloatPoint(x1, y1), FloatPoint(x2, y2)
        if math.dist(c1, c2) < 1e-3:
            return
        r1, r2 = math.dist(c1, (px, py)), math.dist(c2, (px, py))
        tol = 1e-9
        pts = circle_circle_intersection(Circle(c1, r1), Circle(c2, r2), tol=tol)
        assert pts
        if len(pts) == 2:
            for q in pts:
                assert abs(math.dist(q, c1) - r1) <= 1e3 * tol * max(1.0, r1)
                assert abs(math.dist(q, c2) - r2) <= 1e3 * tol * max(1.0, r2)
            # mirror images: the midpoint lies on the center line
            mx, my = (pts[0][0] + pts[1][0]) / 2, (pts[0][1] + pts[1][1]) / 2
            L = math.dist(c1, c2)
            off = ((x2 - x1) * (my - y1) - (y2 - y1) * (mx - x1)) / L
            assert abs(off) <= 1e3 * tol * max(1.0, r1, r2)
            assert point_side_of_line(c1, c2, pts[0], tol=0) is not Side.RIGHT


class TestSideOfLine:
    def test_examples(self):
        a, b = FloatPoint(0, 0), FloatPoint(1, 0)
        assert point_side_of_line(a, b, FloatPoint(0, 1)) is Side.LEFT
        assert point_side_of_line(a, b, FloatPoint(0, -1)) is Side.RIGHT
        assert point_side_of_line(a, b, FloatPoint(5, 0)) is Side.ON_LINE


class TestContainment:
    square = (P(0, 0), P(2, 0), P(2, 2), P(0, 2))

    def test_locate(self):
        assert locate_point(self.square, P(1, 1)) == 1
        assert locate_point(self.square, P(2, 1)) == 0
        assert locate_point(self.square, P(0, 0)) == 0
        assert locate_point(self.square, P(3, 1)) == -1

    def test_segment_inside_boundary_touch(self):
        notch = (P(0, 0), P(4, 0), P(4, 4), P(2, 1), P(0, 4))
        assert segment_inside(notch, P(1, 1), P(3, 1))
        assert not segment_inside(notch, P(1, 3), P(3, 3))
        assert segment_inside(notch, P(0, 0), P(4, 0))

    def test_segment_inside_single_point(self):
        assert segment_inside(self.square, P(2, 2), P(2, 2))
        assert not segment_inside(self.square, P(3, 3), P(3, 3))
