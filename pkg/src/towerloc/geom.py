"""Exact rational geometry primitives.

Every combinatorial decision (orientation, containment, intersection) is made
exactly on :class:`fractions.Fraction` coordinates.  A float pre-filter with a
conservative error bound answers the easy cases; anything inside the
uncertainty band is recomputed with rationals, so results never depend on
rounding.

Circle intersection and side-of-line tests at the localization boundary work
on plain floats (:class:`FloatPoint`) with an explicit tolerance, because
tower distances are irrational in general.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

Rational = Fraction

# |float det - exact det| <= 48 eps M^2 for inputs of magnitude M (see orient)
_FILTER = 1e-13
_TINY = 1e-150


def as_rational(v) -> Fraction:
    """Convert ints, floats, Fractions and strings ("3/7", "0.125") exactly."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, float)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    return Fraction(v)


class Point:
    """Exact rational point.  Equality and hashing are structural."""

    __slots__ = ("x", "y", "fx", "fy", "mag")

    def __init__(self, x, y):
        x = as_rational(x)
        y = as_rational(y)
        self.x = x
        self.y = y
        self.fx = float(x)
        self.fy = float(y)
        self.mag = max(abs(self.fx), abs(self.fy))

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __lt__(self, other):
        return (self.x, self.y) < (other.x, other.y)

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        return f"Point({self.x}, {self.y})"

    def __iter__(self):
        yield self.x
        yield self.y

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def scale(self, f) -> "Point":
        f = as_rational(f)
        return Point(self.x * f, self.y * f)

    def to_float(self) -> "FloatPoint":
        return FloatPoint(self.fx, self.fy)


class FloatPoint(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Circle:
    center: FloatPoint
    radius: float

    def __post_init__(self):
        if not self.radius >= 0:
            raise ValueError(f"circle radius must be non-negative, got {self.radius}")


class Orientation(enum.IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    ON_LINE = "on"


class LineRelation(enum.Enum):
    PARALLEL = "parallel"
    COINCIDENT = "coincident"


class SegmentRelation(enum.Enum):
    DISJOINT = "disjoint"
    TOUCH = "touch"
    PROPER_CROSS = "proper"
    OVERLAP = "overlap"


@dataclass(frozen=True)
class SegmentIntersection:
    kind: SegmentRelation
    points: tuple = ()


# --------------------------------------------------------------------------
# exact predicates
# --------------------------------------------------------------------------

def cross(o: Point, a: Point, b: Point) -> Fraction:
    """Exact (a - o) x (b - o)."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of (b - a) x (c - a) as -1/0/1, exact."""
    det = (b.fx - a.fx) * (c.fy - a.fy) - (b.fy - a.fy) * (c.fx - a.fx)
    m = a.mag
    if b.mag > m:
        m = b.mag
    if c.mag > m:
        m = c.mag
    if m > _TINY:
        bound = _FILTER * m * m
        if det > bound:
            return 1
        if det < -bound:
            return -1
    d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return (d > 0) - (d < 0)


def orient_vec(u: Point, v: Point) -> int:
    """Sign of the cross product of two direction vectors."""
    det = u.fx * v.fy - u.fy * v.fx
    m = max(u.mag, v.mag)
    if m > _TINY:
        bound = _FILTER * m * m
        if det > bound:
            return 1
        if det < -bound:
            return -1
    d = u.x * v.y - u.y * v.x
    return (d > 0) - (d < 0)


def orientation(a: Point, b: Point, c: Point) -> Orientation:
    return Orientation(orient(a, b, c))


def dot(o: Point, a: Point, b: Point) -> Fraction:
    return (a.x - o.x) * (b.x - o.x) + (a.y - o.y) * (b.y - o.y)


def dist2(a: Point, b: Point) -> Fraction:
    dx = a.x - b.x
    dy = a.y - b.y
    return dx * dx + dy * dy


def less_than(a: Fraction, fa: float, b: Fraction, fb: float) -> bool:
    # float rounding is monotone, so a strict float inequality is exact
    if fa < fb:
        return True
    if fa > fb:
        return False
    return a < b


def on_segment(a: Point, b: Point, p: Point) -> bool:
    """Closed segment membership."""
    if orient(a, b, p) != 0:
        return False
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def strictly_between(a: Point, b: Point, p: Point) -> bool:
    """p lies in the relative interior of segment ab."""
    return p != a and p != b and on_segment(a, b, p)


def area2(pts: Sequence[Point]) -> Fraction:
    """Twice the signed area (positive for counterclockwise)."""
    s = Fraction(0)
    n = len(pts)
    for i in range(n):
        a = pts[i]
        b = pts[(i + 1) % n]
        s += a.x * b.y - a.y * b.x
    return s


def locate_point(pts: Sequence[Point], p: Point) -> int:
    """1 inside, 0 on the boundary, -1 outside (crossing rule, exact)."""
    inside = False
    n = len(pts)
    py, fpy = p.y, p.fy
    for i in range(n):
        a = pts[i]
        b = pts[(i + 1) % n]
        a_above = not less_than(a.y, a.fy, py, fpy) and a.y != py
        b_above = not less_than(b.y, b.fy, py, fpy) and b.y != py
        a_below = less_than(a.y, a.fy, py, fpy)
        b_below = less_than(b.y, b.fy, py, fpy)
        if (a_above and b_above) or (a_below and b_below):
            continue
        o = orient(a, b, p)
        if o == 0:
            if min(a.x, b.x) <= p.x <= max(a.x, b.x):
                return 0
            continue
        # half-open rule: count edges with exactly one endpoint strictly above
        if a_above != b_above:
            if b_above == (o > 0):
                inside = not inside
    return 1 if inside else -1


def line_intersection(a1: Point, a2: Point, b1: Point, b2: Point):
    """Exact intersection of the supporting lines, or a LineRelation flag."""
    if a1 == a2 or b1 == b2:
        raise ValueError("degenerate line: identical defining points")
    dax = a2.x - a1.x
    day = a2.y - a1.y
    dbx = b2.x - b1.x
    dby = b2.y - b1.y
    denom = dax * dby - day * dbx
    if denom == 0:
        if cross(a1, a2, b1) == 0:
            return LineRelation.COINCIDENT
        return LineRelation.PARALLEL
    t = ((b1.x - a1.x) * dby - (b1.y - a1.y) * dbx) / denom
    return Point(a1.x + t * dax, a1.y + t * day)


def segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> SegmentIntersection:
    """Exact classification of two closed segments."""
    if p1 == p2 or q1 == q2:
        raise ValueError("zero-length segment")
    o1 = orient(p1, p2, q1)
    o2 = orient(p1, p2, q2)
    o3 = orient(q1, q2, p1)
    o4 = orient(q1, q2, p2)
    if o1 == 0 and o2 == 0:
        # collinear: compare along the dominant axis
        if abs(p2.x - p1.x) >= abs(p2.y - p1.y):
            key = lambda pt: pt.x  # noqa: E731
        else:
            key = lambda pt: pt.y  # noqa: E731
        ps = sorted((p1, p2), key=key)
        qs = sorted((q1, q2), key=key)
        lo = ps[0] if key(ps[0]) >= key(qs[0]) else qs[0]
        hi = ps[1] if key(ps[1]) <= key(qs[1]) else qs[1]
        if key(lo) > key(hi):
            return SegmentIntersection(SegmentRelation.DISJOINT)
        if key(lo) == key(hi):
            return SegmentIntersection(SegmentRelation.TOUCH, (lo,))
        return SegmentIntersection(SegmentRelation.OVERLAP, (lo, hi))
    if o1 * o2 < 0 and o3 * o4 < 0:
        pt = line_intersection(p1, p2, q1, q2)
        return SegmentIntersection(SegmentRelation.PROPER_CROSS, (pt,))
    for cand, a, b in ((q1, p1, p2), (q2, p1, p2), (p1, q1, q2), (p2, q1, q2)):
        if on_segment(a, b, cand):
            return SegmentIntersection(SegmentRelation.TOUCH, (cand,))
    return SegmentIntersection(SegmentRelation.DISJOINT)


# --------------------------------------------------------------------------
# rays and segments against a closed polygonal boundary
# --------------------------------------------------------------------------

def ray_first_hit(pts: Sequence[Point], origin: Point, direction: Point,
                  skip_origin: bool = True):
    """First boundary point hit by the ray origin + t*direction, t > 0.

    Returns ``(t, point, edge_index)`` with the smallest positive ``t`` or
    ``None``.  ``direction`` is a vector stored as a Point.  Edges collinear
    with the ray contribute their nearest endpoint ahead of the origin.
    """
    far = Point(origin.x + direction.x, origin.y + direction.y)
    n = len(pts)
    best = None
    dx, dy = direction.x, direction.y
    for i in range(n):
        a = pts[i]
        b = pts[(i + 1) % n]
        oa = orient(origin, far, a)
        ob = orient(origin, far, b)
        if oa * ob > 0:
            continue
        if oa == 0 and ob == 0:
            for v in (a, b):
                t = _param_along(origin, dx, dy, v)
                if t > 0 and (best is None or t < best[0]):
                    best = (t, v, i)
            continue
        ex, ey = b.x - a.x, b.y - a.y
        denom = dx * ey - dy * ex
        if denom == 0:
            continue
        wx, wy = a.x - origin.x, a.y - origin.y
        t = (wx * ey - wy * ex) / denom
        if t <= 0:
            continue
        if best is not None and t >= best[0]:
            continue
        if oa == 0:
            hit = a
        elif ob == 0:
            hit = b
        else:
            hit = Point(origin.x + t * dx, origin.y + t * dy)
        best = (t, hit, i)
    return best


def _param_along(origin: Point, dx, dy, v: Point) -> Fraction:
    if dx != 0:
        return (v.x - origin.x) / dx
    return (v.y - origin.y) / dy


def segment_boundary_params(pts: Sequence[Point], a: Point, b: Point):
    """Parameters in [0,1] where segment ab meets the polygon boundary.

    Returns ``(params, proper)`` where ``proper`` tells whether some edge
    crosses the open segment transversally at an interior point of both.
    """
    params = {Fraction(0), Fraction(1)}
    proper = False
    n = len(pts)
    dx, dy = b.x - a.x, b.y - a.y
    for i in range(n):
        u = pts[i]
        w = pts[(i + 1) % n]
        ou = orient(a, b, u)
        ow = orient(a, b, w)
        if ou * ow > 0:
            continue
        oa = orient(u, w, a)
        ob = orient(u, w, b)
        if oa * ob > 0 and not (ou == 0 and ow == 0):
            continue
        if ou == 0 and ow == 0:
            for v in (u, w):
                t = _param_along(a, dx, dy, v)
                if 0 <= t <= 1:
                    params.add(t)
            for end, t in ((a, Fraction(0)), (b, Fraction(1))):
                if on_segment(u, w, end):
                    params.add(t)
            continue
        if ou * ow < 0 and oa * ob < 0:
            proper = True
            return params, proper
        if ou == 0 and on_segment(a, b, u):
            params.add(_param_along(a, dx, dy, u))
        if ow == 0 and on_segment(a, b, w):
            params.add(_param_along(a, dx, dy, w))
    return params, proper


def segment_inside(pts: Sequence[Point], a: Point, b: Point, strict: bool = False) -> bool:
    """Whether the closed segment ab lies in the closed polygon.

    Touching the boundary is allowed.  With ``strict`` the open segment must
    avoid the boundary altogether (a cut in the strict sense).
    """
    if a == b:
        return locate_point(pts, a) >= 0
    params, proper = segment_boundary_params(pts, a, b)
    if proper:
        return False
    ts = sorted(params)
    if strict and len(ts) > 2:
        return False
    dx, dy = b.x - a.x, b.y - a.y
    for t0, t1 in zip(ts, ts[1:]):
        tm = (t0 + t1) / 2
        m = Point(a.x + tm * dx, a.y + tm * dy)
        loc = locate_point(pts, m)
        if loc < 0 or (strict and loc == 0):
            return False
    return True


def point_in_wedge(prev: Point, v: Point, nxt: Point, target: Point, closed: bool = False) -> bool:
    """Whether direction v->target points into the interior angle at v.

    The polygon is counterclockwise so the interior lies to the left of
    prev->v->nxt.  With ``closed`` the wedge boundary rays count as inside.
    """
    turn = orient(prev, v, nxt)
    c1 = orient(v, nxt, target)  # left of the outgoing edge
    c2 = orient(v, target, prev)  # target before the incoming edge (CCW)
    if turn > 0:
        if closed:
            return c1 >= 0 and c2 >= 0 and not (c1 == 0 and c2 == 0 and dot(v, nxt, target) < 0)
        return c1 > 0 and c2 > 0
    if turn < 0:
        if closed:
            return not (c1 < 0 and c2 < 0)
        return not (c1 <= 0 and c2 <= 0)
    # straight angle: interior is the open half-plane left of the edge
    if dot(v, prev, nxt) < 0:
        if closed:
            return c1 >= 0
        return c1 > 0
    return False


# --------------------------------------------------------------------------
# floating-point localization primitives
# --------------------------------------------------------------------------

def circle_circle_intersection(c1: Circle, c2: Circle, tol: float = 1e-9):
    """Intersect two circles in floating point.

    Returns an empty tuple, a 1-tuple (tangency) or a 2-tuple whose first
    point lies left of the directed center line c1 -> c2.
    """
    x1, y1 = c1.center
    x2, y2 = c2.center
    dx, dy = x2 - x1, y2 - y1
    d = math.hypot(dx, dy)
    r1, r2 = c1.radius, c2.radius
    scale = max(1.0, r1, r2, d)
    if d <= tol:
        raise ValueError("concentric circles: tower coordinates coincide")
    # distance from c1 along the center line to the chord
    a = (r1 - r2) * (r1 + r2) / (2.0 * d) + d / 2.0
    h2 = (r1 - a) * (r1 + a)
    ux, uy = dx / d, dy / d
    px, py = x1 + a * ux, y1 + a * uy
    band = tol * scale
    if h2 < 0:
        # no intersection unless the miss is inside the tolerance band
        gap = max(d - (r1 + r2), abs(r1 - r2) - d)
        if gap > band:
            return ()
        return (FloatPoint(px, py),)
    h = math.sqrt(h2)
    if h <= band * 1e-3:
        return (FloatPoint(px, py),)
    left = FloatPoint(px - h * uy, py + h * ux)
    right = FloatPoint(px + h * uy, py - h * ux)
    return (left, right)


def point_side_of_line(a: FloatPoint, b: FloatPoint, p: FloatPoint, tol: float = 1e-9) -> Side:
    """Signed-area side test with a tolerance band around the line."""
    ex, ey = b[0] - a[0], b[1] - a[1]
    length = math.hypot(ex, ey)
    if length <= tol:
        raise ValueError("line through two (nearly) identical points")
    s = (ex * (p[1] - a[1]) - ey * (p[0] - a[0])) / length
    scale = max(1.0, abs(a[0]), abs(a[1]), abs(b[0]), abs(b[1]), abs(p[0]), abs(p[1]))
    if s > tol * scale:
        return Side.LEFT
    if s < -tol * scale:
        return Side.RIGHT
    return Side.ON_LINE
