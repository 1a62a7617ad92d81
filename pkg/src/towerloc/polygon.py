"""Simple polygons, polygons* and their triangulations.

A polygon* is a weakly simple polygon with distinct vertices whose interior
angles lie strictly between 0 and 2*pi.  Each vertex carries a flag telling
whether it is a vertex of the original input polygon; dissections insert new
points on the boundary and those are flagged ``False``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .geom import (
    Point,
    area2,
    dist2,
    dot,
    on_segment,
    orient,
    segments_intersect,
    SegmentRelation,
)


class PolygonError(ValueError):
    """Base class for structured polygon rejections."""


class SelfIntersecting(PolygonError):
    pass


class DuplicateVertex(PolygonError):
    pass


class CollinearTriple(PolygonError):
    pass


class TooFewVertices(PolygonError):
    pass


class Degenerate(PolygonError):
    pass


def _coerce(v) -> Point:
    if isinstance(v, Point):
        return v
    x, y = v
    return Point(x, y)


@dataclass(frozen=True)
class SimplePolygon:
    """Counterclockwise simple polygon in general position."""

    vertices: tuple
    name: str = ""

    def __len__(self):
        return len(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def to_star(self) -> "PolygonStar":
        return PolygonStar(self.vertices, (True,) * len(self.vertices))

    def area2(self):
        return area2(self.vertices)


class PolygonStar:
    """Polygon* with provenance flags and externally guarded segments."""

    __slots__ = ("points", "original", "guarded")

    def __init__(self, points: Sequence, original: Sequence[bool] | None = None,
                 guarded: Iterable = ()):
        self.points = tuple(_coerce(p) for p in points)
        if original is None:
            original = (True,) * len(self.points)
        self.original = tuple(bool(o) for o in original)
        if len(self.original) != len(self.points):
            raise ValueError("provenance flags must match the vertex count")
        self.guarded = tuple(guarded)

    def __len__(self):
        return len(self.points)

    @property
    def n(self) -> int:
        return len(self.points)

    def __eq__(self, other):
        if not isinstance(other, PolygonStar):
            return NotImplemented
        return (self.points == other.points and self.original == other.original
                and self.guarded == other.guarded)

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"PolygonStar(n={self.n}, points={list(self.points)!r})"

    def area2(self):
        return area2(self.points)

    def prev(self, i: int) -> int:
        return (i - 1) % len(self.points)

    def next(self, i: int) -> int:
        return (i + 1) % len(self.points)

    def edges(self):
        pts = self.points
        n = len(pts)
        return [(pts[i], pts[(i + 1) % n]) for i in range(n)]

    def is_reflex(self, i: int) -> bool:
        """Interior angle strictly above pi (angle-2*pi spikes excluded)."""
        pts = self.points
        return orient(pts[i - 1], pts[i], pts[(i + 1) % len(pts)]) < 0

    def reflex_indices(self) -> list:
        return [i for i in range(self.n) if self.is_reflex(i)]

    def rotated(self, start: int) -> "PolygonStar":
        pts = self.points[start:] + self.points[:start]
        org = self.original[start:] + self.original[:start]
        return PolygonStar(pts, org, self.guarded)

    def canonical(self) -> "PolygonStar":
        """Rotation starting at the lexicographically smallest vertex."""
        i = min(range(self.n), key=lambda j: (self.points[j].x, self.points[j].y))
        return self.rotated(i)

    def key(self) -> tuple:
        c = self.canonical()
        return c.points


def validate_simple_polygon(vertices, general_position: bool = True, name: str = "") -> SimplePolygon:
    """Check simplicity (and optionally general position); orient CCW."""
    pts = [_coerce(v) for v in vertices]
    n = len(pts)
    if n < 3:
        raise TooFewVertices(f"a polygon needs at least 3 vertices, got {n}")
    seen = {}
    for i, p in enumerate(pts):
        if p in seen:
            raise DuplicateVertex(f"vertices {seen[p]} and {i} coincide at {p}")
        seen[p] = i
    if general_position:
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    if orient(pts[i], pts[j], pts[k]) == 0:
                        raise CollinearTriple(f"vertices {i}, {j}, {k} are collinear")
    else:
        for i in range(n):
            if orient(pts[i - 1], pts[i], pts[(i + 1) % n]) == 0:
                raise CollinearTriple(f"vertices {(i - 1) % n}, {i}, {(i + 1) % n} are collinear")
    _check_simple(pts)
    if area2(pts) < 0:
        pts.reverse()
    return SimplePolygon(tuple(pts), name)


def _check_simple(pts):
    n = len(pts)
    # sweep over x-sorted bounding boxes keeps the common case fast
    boxes = []
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        boxes.append((min(a.fx, b.fx), max(a.fx, b.fx), i))
    boxes.sort()
    active = []
    for lo, hi, i in boxes:
        active = [e for e in active if e[1] >= lo]
        for _, _, j in active:
            _check_edge_pair(pts, i, j)
        active.append((lo, hi, i))


def _check_edge_pair(pts, i, j):
    n = len(pts)
    if i == j:
        return
    a, b = pts[i], pts[(i + 1) % n]
    c, d = pts[j], pts[(j + 1) % n]
    res = segments_intersect(a, b, c, d)
    if res.kind is SegmentRelation.DISJOINT:
        return
    adjacent = (j == (i + 1) % n) or (i == (j + 1) % n)
    if adjacent and res.kind is SegmentRelation.TOUCH:
        return
    if n == 3 and res.kind is SegmentRelation.TOUCH:
        return
    raise SelfIntersecting(f"edges {i} and {j} intersect ({res.kind.value})")


# --------------------------------------------------------------------------
# simplification
# --------------------------------------------------------------------------

def simplify(p: PolygonStar) -> PolygonStar:
    """Remove collinear vertices until no three consecutive ones are collinear.

    A vertex with angle pi is dropped and its two edges merge.  A vertex with
    angle 0 or 2*pi (a zero-width spike) is deleted as well; the shorter of its
    two edges no longer appears on the boundary and is recorded in
    ``guarded`` so coverage accounting still includes it.
    """
    pts = list(p.points)
    org = list(p.original)
    guarded = list(p.guarded)
    changed = True
    while changed:
        changed = False
        n = len(pts)
        if n < 3:
            break
        for i in range(n):
            a, v, b = pts[i - 1], pts[i], pts[(i + 1) % n]
            if orient(a, v, b) != 0:
                continue
            if dot(v, a, b) > 0:
                # a and b on the same side of v: spike tip
                nearer = a if dist2(v, a) <= dist2(v, b) else b
                guarded.append((v, nearer))
            del pts[i]
            del org[i]
            changed = True
            break
    if len(pts) < 3:
        raise Degenerate("polygon collapsed below 3 vertices during simplification")
    return PolygonStar(pts, org, guarded)


# --------------------------------------------------------------------------
# triangulation
# --------------------------------------------------------------------------

@dataclass
class Triangulation:
    points: tuple
    triangles: list
    diagonals: list
    degenerate: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.points)

    def triangle_area2(self, t) -> object:
        a, b, c = (self.points[i] for i in t)
        return area2((a, b, c))


def _is_ear(pts, idx, k, strict: bool) -> bool:
    m = len(idx)
    i0, i1, i2 = idx[k - 1], idx[k], idx[(k + 1) % m]
    a, b, c = pts[i0], pts[i1], pts[i2]
    o = orient(a, b, c)
    if strict:
        if o <= 0:
            return False
    else:
        # degenerate ear: b strictly between a and c
        if o != 0 or not (on_segment(a, c, b) and b != a and b != c):
            return False
        return True
    for j in idx:
        if j in (i0, i1, i2):
            continue
        q = pts[j]
        if q == a or q == b or q == c:
            continue
        if orient(a, b, q) >= 0 and orient(b, c, q) >= 0 and orient(c, a, q) >= 0:
            # a vertex on the closing diagonal ac is fine only if the
            # reflex/convex structure lets the diagonal pass; be conservative
            return False
    return True


def triangulate(p: PolygonStar) -> Triangulation:
    """Ear clipping with exact predicates.

    Strictly convex ears are preferred, lowest index first; a degenerate ear
    (middle vertex lying on the closing segment) is clipped only when no
    strictly convex ear exists.
    """
    pts = p.points
    n = len(pts)
    if n < 3:
        raise Degenerate("cannot triangulate fewer than 3 vertices")
    idx = list(range(n))
    tris = []
    diags = []
    degen = []
    while len(idx) > 3:
        m = len(idx)
        chosen = None
        for k in range(m):
            if _is_ear(pts, idx, k, strict=True):
                chosen = (k, False)
                break
        if chosen is None:
            for k in range(m):
                if _is_ear(pts, idx, k, strict=False):
                    chosen = (k, True)
                    break
        if chosen is None:
            raise Degenerate("no ear found; polygon is not weakly simple")
        k, is_deg = chosen
        i0, i1, i2 = idx[k - 1], idx[k], idx[(k + 1) % m]
        tris.append((i0, i1, i2))
        degen.append(is_deg)
        diags.append((min(i0, i2), max(i0, i2)))
        del idx[k]
    i0, i1, i2 = idx
    tris.append((i0, i1, i2))
    degen.append(orient(pts[i0], pts[i1], pts[i2]) == 0)
    return Triangulation(pts, tris, diags, degen)


# --------------------------------------------------------------------------
# dual graph
# --------------------------------------------------------------------------

class NodeKind(enum.Enum):
    SHORT_LEAF = "short_leaf"
    LONG_LEAF = "long_leaf"
    INTERNAL = "internal"
    ISOLATED = "isolated"


@dataclass
class DualGraph:
    nodes: list
    edges: list
    adjacency: dict
    kinds: list

    def leaves(self) -> list:
        return [i for i, k in enumerate(self.kinds)
                if k in (NodeKind.SHORT_LEAF, NodeKind.LONG_LEAF)]

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])


def _tri_edges(t):
    a, b, c = t
    return [(min(a, b), max(a, b)), (min(b, c), max(b, c)), (min(c, a), max(c, a))]


def dual_graph(t: Triangulation) -> DualGraph:
    owner = {}
    edges = []
    adj = {i: [] for i in range(len(t.triangles))}
    for i, tri in enumerate(t.triangles):
        for e in _tri_edges(tri):
            if e in owner:
                j = owner[e]
                edges.append((j, i, e))
                adj[i].append(j)
                adj[j].append(i)
            else:
                owner[e] = i
    kinds = []
    for i in range(len(t.triangles)):
        deg = len(adj[i])
        if deg == 0:
            kinds.append(NodeKind.ISOLATED)
        elif deg == 1:
            nb = adj[i][0]
            # a two-node path has no degree-2 neighbour; classify it as long
            kinds.append(NodeKind.SHORT_LEAF if len(adj[nb]) == 3 else NodeKind.LONG_LEAF)
        else:
            kinds.append(NodeKind.INTERNAL)
    return DualGraph(list(range(len(t.triangles))), edges, adj, kinds)


# --------------------------------------------------------------------------
# fan re-triangulation
# --------------------------------------------------------------------------

def _tri_degenerate(pts, tri) -> bool:
    a, b, c = (pts[i] for i in tri)
    return orient(a, b, c) == 0


def _ccw(pts, tri):
    a, b, c = tri
    if orient(pts[a], pts[b], pts[c]) < 0:
        return (a, c, b)
    return tri


def retriangulate_fan_nondegenerate(t: Triangulation, apex: int) -> Triangulation:
    """Flip diagonals until no triangle incident to ``apex`` is degenerate.

    A degenerate triangle (apex, x, y) sharing the diagonal (apex, y) with a
    non-degenerate neighbour (apex, y, w) is replaced by flipping that
    diagonal into (x, w).  Triangles away from the apex are left alone.
    """
    pts = t.points
    n = len(pts)
    if not 0 <= apex < n:
        raise ValueError(f"apex index {apex} out of range")
    if orient(pts[apex - 1], pts[apex], pts[(apex + 1) % n]) <= 0:
        raise ValueError("apex must be a strictly convex vertex")
    tris = [tuple(tr) for tr in t.triangles]
    polygon_edges = {(min(i, (i + 1) % n), max(i, (i + 1) % n)) for i in range(n)}
    budget = 4 * n * n
    while budget > 0:
        budget -= 1
        bad = None
        for i, tr in enumerate(tris):
            if apex in tr and _tri_degenerate(pts, tr):
                bad = i
                break
        if bad is None:
            break
        flipped = False
        tr = tris[bad]
        others = [v for v in tr if v != apex]
        for y in others:
            x = others[0] if others[1] == y else others[1]
            e = (min(apex, y), max(apex, y))
            if e in polygon_edges:
                continue
            for j, tr2 in enumerate(tris):
                if j == bad or apex not in tr2 or y not in tr2:
                    continue
                w = [v for v in tr2 if v not in (apex, y)][0]
                new1 = (x, y, w)
                new2 = (apex, x, w)
                if _flip_valid(pts, apex, x, y, w):
                    tris[bad] = _ccw(pts, new1)
                    tris[j] = _ccw(pts, new2)
                    flipped = True
                    break
            if flipped:
                break
        if not flipped:
            raise Degenerate("cannot remove degenerate fan triangle by flipping")
    else:
        raise Degenerate("fan re-triangulation did not converge")
    diags = sorted({e for tr in tris for e in _tri_edges(tr)} - polygon_edges)
    degen = [_tri_degenerate(pts, tr) for tr in tris]
    return Triangulation(pts, tris, diags, degen)


def _flip_valid(pts, apex, x, y, w) -> bool:
    a, px, py, pw = pts[apex], pts[x], pts[y], pts[w]
    # the new triangles must not be inverted; the one at the apex must have area
    o1 = orient(px, py, pw)
    o2 = orient(a, px, pw)
    if o2 == 0:
        return False
    # both new triangles must share the orientation of the quadrilateral
    ref = orient(a, py, pw)
    if ref == 0:
        return False
    return (o1 == 0 or o1 == ref) and o2 == ref
