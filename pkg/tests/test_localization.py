import ast
import math
import subprocess
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

import towerloc.localization as loc
from towerloc.geom import Point
from towerloc.localization import (
    Ambiguous,
    InconsistentDistances,
    InsufficientTowers,
    LocalizationQuery,
    Method,
    NoCodeword,
    Parity,
    decode_parity,
    localize,
)
from towerloc.partition import GuardAnchor, PlacementKind, Side
from towerloc.towers import place_pair


class TestDecode:
    def test_examples(self):
        c = decode_parity(0.2222222222222222)
        assert (c.m, c.s, c.parity) == (2, 1, Parity.EVEN)
        c = decode_parity(0.012345679012345678)
        assert (c.m, c.s, c.parity) == (1, 3, Parity.ODD)
        with pytest.raises(NoCodeword):
            decode_parity(0.5)

    def test_loose_tolerance_is_ambiguous(self):
        with pytest.raises(Ambiguous):
            decode_parity(2 / 9, tol=0.6)

    def test_nonpositive(self):
        with pytest.raises(ValueError):
            decode_parity(0.0)

    @pytest.mark.parametrize("s", range(0, 31))
    @pytest.mark.parametrize("m", [1, 2])
    def test_codec(self, m, s):
        c = decode_parity(float(F(m, 3 ** (s + 1))))
        assert (c.m, c.s) == (m, s)


class TestQuery:
    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            LocalizationQuery([(0, 0), (1, 0)], [1.0])

    def test_negative_distance(self):
        with pytest.raises(ValueError):
            LocalizationQuery([(0, 0)], [-1.0])

    def test_nonfinite(self):
        with pytest.raises(ValueError):
            LocalizationQuery([(math.nan, 0)], [1.0])


class TestLocalize:
    def test_even_left(self):
        fix = localize(LocalizationQuery([(0, 0), (2 / 9, 0)], [1.0, 1.0]))
        assert fix.method is Method.TWO_CIRCLE_PARITY_LEFT
        assert fix.point[0] == pytest.approx(1 / 9, abs=1e-14)
        assert fix.point[1] == pytest.approx(math.sqrt(1 - 1 / 81), abs=1e-14)

    def test_odd_right(self):
        fix = localize(LocalizationQuery([(0, 0), (1 / 9, 0)], [1.0, 1.0]))
        assert fix.method is Method.TWO_CIRCLE_PARITY_RIGHT
        assert fix.point[1] < 0
        assert fix.point[0] == pytest.approx(1 / 18, abs=1e-14)

    def test_tower_order_irrelevant(self):
        a = localize(LocalizationQuery([(0, 0), (2 / 9, 0)], [1.0, 1.0]))
        b = localize(LocalizationQuery([(2 / 9, 0), (0, 0)], [1.0, 1.0]))
        assert a.point == b.point

    def test_three_circle(self):
        p = (0.25, 0.25)
        towers = [(0, 0), (1, 0), (0, 1)]
        fix = localize(LocalizationQuery(towers, [math.dist(p, t) for t in towers]))
        assert fix.method is Method.THREE_CIRCLE
        assert fix.residual < 1e-12
        assert math.dist(fix.point, p) < 1e-12

    def test_collinear_three_uses_parity(self):
        towers = [(0, 0), (2 / 9, 0), (1, 0)]
        p = (0.5, 0.75)
        fix = localize(LocalizationQuery(towers, [math.dist(p, t) for t in towers]))
        assert fix.method is Method.TWO_CIRCLE_PARITY_LEFT
        assert math.dist(fix.point, p) < 1e-12

    def test_insufficient(self):
        with pytest.raises(InsufficientTowers):
            localize(LocalizationQuery([(0, 0)], [1.0]))

    def test_inconsistent(self):
        with pytest.raises(InconsistentDistances):
            localize(LocalizationQuery([(0, 0), (1, 0), (0, 1)], [1.0, 1.0, 5.0]))

    def test_circles_apart(self):
        with pytest.raises(InconsistentDistances):
            localize(LocalizationQuery([(0, 0), (2 / 9, 0)], [1.0, 5.0]))

    def test_foreign_pair(self):
        with pytest.raises(NoCodeword):
            localize(LocalizationQuery([(0, 0), (0.5, 0)], [1.0, 1.0]))

    def test_tangent_on_line(self):
        fix = localize(LocalizationQuery([(0, 0), (2 / 9, 0)], [1.0, 1.0 - 2 / 9]))
        assert fix.point == pytest.approx((1.0, 0.0), abs=1e-9)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(-20, 20), st.floats(-20, 20), st.floats(0, 2 * math.pi),
           st.floats(-20, 20), st.floats(-20, 20), st.sampled_from([1, 2]))
    def test_mirror_soundness(self, x, y, ang, px, py, m):
        ta = (x, y)
        d = m / 9
        tb = (x + d * math.cos(ang), y + d * math.sin(ang))
        if math.dist(ta, tb) == 0:
            return
        q = LocalizationQuery([ta, tb], [math.dist(ta, (px, py)), math.dist(tb, (px, py))])
        try:
            fix = localize(q)
        except NoCodeword:
            # rounding tb can push the separation outside the code tolerance
            return
        if fix.rejected is None or fix.rejected == fix.point:
            return
        # the two candidates mirror each other across the tower line
        (x1, y1), (x2, y2) = sorted([ta, tb])
        L = math.dist(ta, tb)
        mx, my = (fix.point[0] + fix.rejected[0]) / 2, (fix.point[1] + fix.rejected[1]) / 2
        off = ((x2 - x1) * (my - y1) - (y2 - y1) * (mx - x1)) / L
        assert abs(off) <= 1e-6
        s = ((x2 - x1) * (fix.point[1] - y1) - (y2 - y1) * (fix.point[0] - x1))
        assert (s >= 0) == (m == 2) or abs(s) < 1e-9


@settings(max_examples=300, deadline=None)
@given(st.fractions(-100, 100, max_denominator=10**4), st.fractions(-100, 100, max_denominator=10**4),
       st.fractions(-100, 100, max_denominator=10**4), st.fractions(-100, 100, max_denominator=10**4),
       st.sampled_from([Side.LEFT, Side.RIGHT]))
def test_placed_pairs_decode_to_their_side(ax, ay, bx, by, side):
    if (ax, ay) == (bx, by):
        return
    pair = place_pair(GuardAnchor(0, PlacementKind.ON_SEGMENT, (Point(ax, ay), Point(bx, by)), side))
    if pair.s > 30:
        return
    t1, t2 = pair.towers()
    c = decode_parity(math.dist((t1.x, t1.y), (t2.x, t2.y)))
    assert (c.m, c.s) == (pair.m, pair.s)
    assert (c.parity is Parity.EVEN) == (pair.side is Side.LEFT)


def test_no_polygon_imports():
    tree = ast.parse(Path(loc.__file__).read_text())
    names = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom):
            names.add(node.module or "")
        elif isinstance(node, ast.Import):
            names.update(a.name for a in node.names)
    assert not any("polygon" in n or "visibility" in n or "partition" in n for n in names)
    out = subprocess.run([sys.executable, "-c", "import sys, towerloc.localization; "
                          "print(sorted(m for m in sys.modules if m.startswith('towerloc')))"],
                         capture_output=True, text=True, check=True).stdout
    assert "polygon" not in out and "visibility" not in out
