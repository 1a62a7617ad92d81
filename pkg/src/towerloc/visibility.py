"""Visibility polygons, kernels and star-shapedness, all exact."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .geom import (
    Point,
    cross,
    locate_point,
    on_segment,
    orient,
    orient_vec,
    ray_first_hit,
    segment_inside,
)
from .polygon import PolygonStar, SimplePolygon


class KernelKind(enum.Enum):
    FULL_DIM = "full"
    SEGMENT = "segment"
    SINGLE_POINT = "point"
    EMPTY = "empty"


@dataclass(frozen=True)
class Kernel:
    region: tuple
    kind: KernelKind

    @property
    def empty(self) -> bool:
        return self.kind is KernelKind.EMPTY

    def contains(self, p: Point) -> bool:
        if self.kind is KernelKind.EMPTY:
            return False
        if self.kind is KernelKind.SINGLE_POINT:
            return p == self.region[0]
        if self.kind is KernelKind.SEGMENT:
            return on_segment(self.region[0], self.region[1], p)
        return locate_point(self.region, p) >= 0


@dataclass(frozen=True)
class VisibilityPolygon:
    region: tuple
    query: Point

    def contains(self, p: Point) -> bool:
        return locate_point(self.region, p) >= 0


def _points(p) -> tuple:
    if isinstance(p, (PolygonStar, SimplePolygon)):
        return tuple(p.points) if isinstance(p, PolygonStar) else tuple(p.vertices)
    return tuple(p)


# --------------------------------------------------------------------------
# kernel
# --------------------------------------------------------------------------

def _clip(poly, a: Point, b: Point):
    """Clip a convex (possibly degenerate) polygon by the closed left side of ab."""
    out = []
    m = len(poly)
    if m == 0:
        return out
    sides = [orient(a, b, q) for q in poly]
    for i in range(m):
        cur, nxt = poly[i], poly[(i + 1) % m]
        sc, sn = sides[i], sides[(i + 1) % m]
        if sc >= 0:
            out.append(cur)
        if (sc > 0 and sn < 0) or (sc < 0 and sn > 0):
            dc = cross(a, b, cur)
            dn = cross(a, b, nxt)
            t = dc / (dc - dn)
            out.append(Point(cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)))
    # collapse consecutive duplicates
    res = []
    for q in out:
        if not res or res[-1] != q:
            res.append(q)
    if len(res) > 1 and res[0] == res[-1]:
        res.pop()
    return res


def kernel(p) -> Kernel:
    """Intersection of the closed inner half-planes of all edges."""
    pts = _points(p)
    xs = [q.x for q in pts]
    ys = [q.y for q in pts]
    lo_x, hi_x, lo_y, hi_y = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    region = [Point(lo_x, lo_y), Point(hi_x, lo_y), Point(hi_x, hi_y), Point(lo_x, hi_y)]
    n = len(pts)
    for i in range(n):
        region = _clip(region, pts[i], pts[(i + 1) % n])
        if not region:
            return Kernel((), KernelKind.EMPTY)
    return _classify(region)


def _classify(region) -> Kernel:
    uniq = []
    for q in region:
        if q not in uniq:
            uniq.append(q)
    if len(uniq) == 1:
        return Kernel((uniq[0],), KernelKind.SINGLE_POINT)
    a = uniq[0]
    far = max(uniq[1:], key=lambda q: (q.x - a.x) ** 2 + (q.y - a.y) ** 2)
    if all(orient(a, far, q) == 0 for q in uniq):
        lo = min(uniq)
        hi = max(uniq)
        return Kernel((lo, hi), KernelKind.SEGMENT)
    # drop collinear points so FullDim regions are strictly convex, CCW
    m = len(uniq)
    strict = [uniq[i] for i in range(m)
              if orient(uniq[i - 1], uniq[i], uniq[(i + 1) % m]) != 0]
    return Kernel(tuple(strict), KernelKind.FULL_DIM)


def is_star_shaped(p) -> bool:
    return not kernel(p).empty


def kernel_boundary_segments(p, k: Kernel | None = None) -> list:
    """Maximal positive-length pieces of each edge lying in the kernel.

    Returns ``(edge_index, start, end)`` triples in edge order.  Computed by
    clipping each edge's parameter interval against every edge half-plane.
    """
    pts = _points(p)
    if k is not None and k.empty:
        return []
    n = len(pts)
    out = []
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        lo, hi = Fraction(0), Fraction(1)
        for j in range(n):
            if j == i:
                continue
            c, d = pts[j], pts[(j + 1) % n]
            f0 = cross(c, d, a)
            f1 = cross(c, d, b)
            # f(t) = f0 + t (f1 - f0) >= 0
            slope = f1 - f0
            if slope == 0:
                if f0 < 0:
                    lo, hi = Fraction(1), Fraction(0)
                    break
                continue
            t = -f0 / slope
            if slope > 0:
                if t > lo:
                    lo = t
            else:
                if t < hi:
                    hi = t
            if lo >= hi:
                break
        if lo < hi:
            sa = a if lo == 0 else Point(a.x + lo * (b.x - a.x), a.y + lo * (b.y - a.y))
            sb = b if hi == 1 else Point(a.x + hi * (b.x - a.x), a.y + hi * (b.y - a.y))
            out.append((i, sa, sb))
    return out


# --------------------------------------------------------------------------
# point-to-point visibility
# --------------------------------------------------------------------------

def sees(p, a: Point, b: Point) -> bool:
    """Closed visibility: segment ab inside p, boundary contact allowed."""
    pts = _points(p)
    if a == b:
        return locate_point(pts, a) >= 0
    return segment_inside(pts, a, b)


# --------------------------------------------------------------------------
# visibility polygon
# --------------------------------------------------------------------------

def _upper(v: Point) -> bool:
    return v.y > 0 or (v.y == 0 and v.x > 0)


def _angle_cmp(u: Point, v: Point) -> int:
    hu, hv = _upper(u), _upper(v)
    if hu != hv:
        return -1 if hu else 1
    c = orient_vec(u, v)
    return -c


def _rel_cmp(ref: Point):
    def cmp(u: Point, v: Point) -> int:
        # angle measured counterclockwise from ref in [0, 2pi)
        ru = _rel_half(ref, u)
        rv = _rel_half(ref, v)
        if ru != rv:
            return -1 if ru < rv else 1
        c = orient_vec(u, v)
        return -c
    return cmp


def _rel_half(ref: Point, v: Point) -> int:
    c = orient_vec(ref, v)
    if c > 0:
        return 0
    if c == 0:
        d = ref.x * v.x + ref.y * v.y
        return 0 if d > 0 else 1
    return 1


def _l1(v: Point) -> Fraction:
    return abs(v.x) + abs(v.y)


def _mid_direction(d1: Point, d2: Point) -> Point:
    c = orient_vec(d1, d2)
    n1 = d1.scale(1 / _l1(d1))
    n2 = d2.scale(1 / _l1(d2))
    if c > 0:
        return n1 + n2
    if c == 0:
        dt = d1.x * d2.x + d1.y * d2.y
        if dt < 0:
            return Point(-d1.y, d1.x)
        return Point(-n1.x, -n1.y)
    return Point(-(n1.x + n2.x), -(n1.y + n2.y))


def _same_dir(u: Point, v: Point) -> bool:
    return orient_vec(u, v) == 0 and u.x * v.x + u.y * v.y > 0


def _ray_line_point(q: Point, d: Point, a: Point, b: Point) -> Point:
    ex, ey = b.x - a.x, b.y - a.y
    denom = d.x * ey - d.y * ex
    t = ((a.x - q.x) * ey - (a.y - q.y) * ex) / denom
    return Point(q.x + t * d.x, q.y + t * d.y)


def visibility_polygon(p, q: Point) -> VisibilityPolygon:
    """Exact visibility region of q by casting rays between critical directions."""
    pts = _points(p)
    n = len(pts)
    loc = locate_point(pts, q)
    if loc < 0:
        raise ValueError(f"query point {q} lies outside the polygon")
    dirs = []
    for v in pts:
        if v != q:
            dirs.append(v - q)
    wedge = None
    if loc == 0:
        wedge = _boundary_wedge(pts, q)
        start, end = wedge
        cmp = _rel_cmp(start)
        dirs = [d for d in dirs if cmp(d, end) <= 0]
        dirs.append(start)
        dirs.append(end)
    else:
        cmp = _angle_cmp
    dirs.sort(key=cmp_to_key(cmp))
    uniq = []
    for d in dirs:
        if not uniq or not _same_dir(uniq[-1], d):
            uniq.append(d)
    if wedge is None and len(uniq) > 1 and _same_dir(uniq[0], uniq[-1]):
        uniq.pop()
    m = len(uniq)
    if wedge is None:
        intervals = [(uniq[i], uniq[(i + 1) % m]) for i in range(m)]
    else:
        intervals = [(uniq[i], uniq[i + 1]) for i in range(m - 1)]
    hits = []
    for d1, d2 in intervals:
        mid = _mid_direction(d1, d2)
        h = ray_first_hit(pts, q, mid)
        if h is None:
            raise ValueError("ray escaped the polygon; input is not a closed polygon")
        hits.append(h[2])
    region = []
    if wedge is not None:
        region.append(q)
    k = len(intervals)
    for i in range(k):
        d1, d2 = intervals[i]
        e = hits[i]
        a, b = pts[e], pts[(e + 1) % n]
        p1 = _ray_line_point(q, d1, a, b)
        p2 = _ray_line_point(q, d2, a, b)
        for r in (p1, p2):
            if not region or region[-1] != r:
                region.append(r)
    if len(region) > 1 and region[0] == region[-1]:
        region.pop()
    return VisibilityPolygon(tuple(region), q)


def _boundary_wedge(pts, q: Point):
    """Directions bounding the interior angle at a boundary point q (CCW order)."""
    n = len(pts)
    for i, v in enumerate(pts):
        if v == q:
            return (pts[(i + 1) % n] - q, pts[i - 1] - q)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        if on_segment(a, b, q):
            return (b - q, a - q)
    raise ValueError("point is not on the boundary")
