"""Dissections of polygons* and the goodness bookkeeping."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..geom import (
    Point,
    locate_point,
    on_segment,
    orient,
    ray_first_hit,
    segment_inside,
    strictly_between,
)
from ..polygon import Degenerate, PolygonStar, simplify


class DissectionKind(enum.Enum):
    DIAGONAL = "diagonal"
    EDGE_EXTENSION = "edge_extension"
    TWO_SEGMENT = "two_segment"
    REFLEX_BISECTOR = "reflex_bisector"
    RAY = "ray"


@dataclass(frozen=True)
class GoodnessCertificate:
    n: int
    n1: int
    n2: int
    holds: bool


def goodness(n: int, n1: int, n2: int) -> GoodnessCertificate:
    """Check floor(n1/3) + floor(n2/3) <= floor(n/3) for a split of an n-gon."""
    if n <= 5:
        raise ValueError(f"goodness is only defined for n > 5, got n={n}")
    return GoodnessCertificate(n, n1, n2, n1 // 3 + n2 // 3 <= n // 3)


@dataclass
class Dissection:
    """A one- or two-segment chain splitting a polygon* in two.

    ``left_piece`` lies to the left of the chain traversed from its first to
    its last point.  Pieces are already simplified.
    """

    chain: tuple
    kind: DissectionKind
    left_piece: PolygonStar
    right_piece: PolygonStar
    certificate: GoodnessCertificate
    label: str = ""
    raw_sizes: tuple = ()

    @property
    def pieces(self):
        return (self.left_piece, self.right_piece)


class InvalidCut(ValueError):
    pass


def boundary_param(pts: Sequence[Point], x: Point) -> Fraction:
    """Position of a boundary point as edge index plus fraction along the edge."""
    n = len(pts)
    for i, v in enumerate(pts):
        if v == x:
            return Fraction(i)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        if strictly_between(a, b, x):
            if a.x != b.x:
                t = (x.x - a.x) / (b.x - a.x)
            else:
                t = (x.y - a.y) / (b.y - a.y)
            return i + t
    raise InvalidCut(f"{x} is not on the boundary")


def _walk(p: PolygonStar, s0: Fraction, s1: Fraction):
    """Vertices strictly between boundary positions s0 and s1 going CCW."""
    n = p.n
    span = (s1 - s0) % n
    out = []
    j = int(s0) + 1
    while j - s0 < span:
        idx = j % n
        out.append((p.points[idx], p.original[idx]))
        j += 1
    return out


def split_polygon(p: PolygonStar, chain: Sequence[Point]):
    """Split ``p`` along ``chain``; returns raw (left, right) pieces."""
    chain = list(chain)
    if len(chain) < 2:
        raise InvalidCut("chain needs at least two points")
    pts = p.points
    s0 = boundary_param(pts, chain[0])
    s1 = boundary_param(pts, chain[-1])
    if s0 == s1:
        raise InvalidCut("chain endpoints coincide")
    flag = {pt: o for pt, o in zip(pts, p.original)}
    c0 = (chain[0], flag.get(chain[0], False))
    cm = (chain[-1], flag.get(chain[-1], False))
    inner = [(q, False) for q in chain[1:-1]]
    right = [c0] + _walk(p, s0, s1) + [cm] + inner[::-1]
    left = [cm] + _walk(p, s1, s0) + [c0] + inner
    return _mk(left, p), _mk(right, p)


def _mk(items, parent: PolygonStar) -> PolygonStar:
    pts = [q for q, _ in items]
    org = [o for _, o in items]
    guarded = [g for g in parent.guarded if _seg_on_boundary(pts, g)]
    return PolygonStar(pts, org, guarded)


def _seg_on_boundary(pts, seg) -> bool:
    a, b = seg
    n = len(pts)
    for i in range(n):
        u, w = pts[i], pts[(i + 1) % n]
        if on_segment(u, w, a) or on_segment(u, w, b):
            return True
    return False


def validate_chain(p: PolygonStar, chain: Sequence[Point]) -> bool:
    """Strict cut check: the open chain runs through the interior of p."""
    pts = p.points
    if len(chain) == 3:
        a, q, b = chain
        if orient(a, q, b) == 0:
            return False
        if locate_point(pts, q) != 1:
            return False
        return (segment_inside(pts, a, q, strict=True)
                and segment_inside(pts, q, b, strict=True))
    if len(chain) != 2:
        return False
    a, b = chain
    if a == b:
        return False
    return segment_inside(pts, a, b, strict=True)


def make_dissection(p: PolygonStar, chain: Sequence[Point], kind: DissectionKind,
                    label: str = "", check: bool = True) -> Optional[Dissection]:
    """Validate and apply a cut; ``None`` when the cut is not a strict cut."""
    chain = tuple(chain)
    if check and not validate_chain(p, chain):
        return None
    try:
        left_raw, right_raw = split_polygon(p, chain)
        left = simplify(left_raw)
        right = simplify(right_raw)
    except (InvalidCut, Degenerate):
        return None
    a_total = p.area2()
    al, ar = left.area2(), right.area2()
    if al <= 0 or ar <= 0 or al + ar != a_total:
        return None
    cert = goodness(p.n, left.n, right.n) if p.n > 5 else GoodnessCertificate(p.n, left.n, right.n, False)
    return Dissection(chain, kind, left, right, cert, label, (left_raw.n, right_raw.n))


# --------------------------------------------------------------------------
# diagonals
# --------------------------------------------------------------------------

@dataclass
class DiagonalReport:
    i: int
    j: int
    interior: tuple
    interior_original: tuple
    n1: int
    n2: int
    dissection: Optional[Dissection] = None


def is_diagonal(p: PolygonStar, i: int, j: int) -> bool:
    """Closed segment v_i v_j lies in p, touching the boundary only at vertices."""
    pts = p.points
    n = p.n
    if i == j or (i - j) % n in (1, n - 1):
        return False
    a, b = pts[i], pts[j]
    from ..geom import point_in_wedge
    if not point_in_wedge(pts[i - 1], a, pts[(i + 1) % n], b):
        return False
    if not point_in_wedge(pts[j - 1], b, pts[(j + 1) % n], a):
        return False
    if not segment_inside(pts, a, b):
        return False
    # contacts inside the open segment must be vertices, never edge interiors
    for k in range(n):
        u, w = pts[k], pts[(k + 1) % n]
        if orient(a, b, u) == 0 and orient(a, b, w) == 0:
            # collinear edge overlapping the open diagonal is not allowed
            if _overlap_open(a, b, u, w):
                return False
    return True


def _overlap_open(a, b, u, w) -> bool:
    key = (lambda q: q.x) if a.x != b.x else (lambda q: q.y)
    lo1, hi1 = sorted((key(a), key(b)))
    lo2, hi2 = sorted((key(u), key(w)))
    return max(lo1, lo2) < min(hi1, hi2)


def diagonal_interior_vertices(p: PolygonStar, i: int, j: int) -> list:
    a, b = p.points[i], p.points[j]
    return [k for k in range(p.n) if k not in (i, j) and strictly_between(a, b, p.points[k])]


def diagonal_sizes(n: int, i: int, j: int):
    d = (j - i) % n
    return d + 1, n - d + 1


def find_good_diagonal(p: PolygonStar, max_interior: int = 2):
    """First good diagonal in order of interior-vertex count, then index pair.

    Diagonals without interior vertices come back with an applied
    dissection; the others are reported so the caller can branch on them.
    Returns ``None`` when no good diagonal exists.
    """
    reports = list(iter_good_diagonals(p, max_interior))
    if not reports:
        return None
    reports.sort(key=lambda r: (len(r.interior_original), len(r.interior), r.i, r.j))
    return reports[0]


def iter_good_diagonals(p: PolygonStar, max_interior: int = 2):
    n = p.n
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            n1, n2 = diagonal_sizes(n, i, j)
            if n1 // 3 + n2 // 3 > n // 3:
                continue
            if not is_diagonal(p, i, j):
                continue
            inner = diagonal_interior_vertices(p, i, j)
            if len(inner) > max_interior:
                continue
            inner_org = tuple(k for k in inner if p.original[k])
            rep = DiagonalReport(i, j, tuple(inner), inner_org, n1, n2)
            if not inner:
                d = make_dissection(p, (p.points[i], p.points[j]), DissectionKind.DIAGONAL,
                                    "diagonal", check=False)
                if d is None or not d.certificate.holds:
                    continue
                rep.dissection = d
            yield rep


# --------------------------------------------------------------------------
# rays
# --------------------------------------------------------------------------

def ray_cut(p: PolygonStar, origin: Point, direction: Point):
    """Segment from ``origin`` to the first boundary point along ``direction``."""
    h = ray_first_hit(p.points, origin, direction)
    if h is None:
        return None
    return h[1]


def extension_point(p: PolygonStar, i: int, through: int):
    """Where the ray from v_through through v_i first reaches the boundary beyond v_i."""
    v = p.points[i]
    u = p.points[through]
    return ray_cut(p, v, v - u)


def ray_meet(o1: Point, d1: Point, o2: Point, d2: Point):
    """Intersection of two rays strictly ahead of both origins, or None."""
    den = d1.x * d2.y - d1.y * d2.x
    if den == 0:
        return None
    wx, wy = o2.x - o1.x, o2.y - o1.y
    t = (wx * d2.y - wy * d2.x) / den
    u = (wx * d1.y - wy * d1.x) / den
    if t <= 0 or u <= 0:
        return None
    return Point(o1.x + t * d1.x, o1.y + t * d1.y), t, u
