"""Recursive partition into star-shaped pieces with guard anchors.

The driver follows a fixed priority ladder: small and star-shaped pieces
become leaves, polygons with few reflex angles are cut at their reflex
vertices, and everything else is dissected by the first good cut found in
the order diagonals, edge extensions, leaf constructions, generic cuts and
finally the fan split.  A sub-polygon that cannot be finished makes the
driver back up and try the next candidate, so every accepted dissection is
certified good and every leaf is known to be guardable.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..geom import Point, orient, ray_first_hit, locate_point
from ..polygon import (
    Degenerate,
    PolygonStar,
    SimplePolygon,
    simplify,
    triangulate,
)
from ..visibility import kernel, kernel_boundary_segments
from .cases import (
    dissect_case_study,
    dissect_point_kernel,
    fan_split,
    leaf_candidates,
)
from .dissection import (
    DissectionKind,
    iter_good_diagonals,
    make_dissection,
    ray_meet,
)

log = logging.getLogger(__name__)


class Side(enum.Enum):
    LEFT = "L"
    RIGHT = "R"


class PlacementKind(enum.Enum):
    ON_SEGMENT = "on_segment"
    AT_CONVEX_VERTEX = "at_convex_vertex"
    NEAR_VERTEX_EXTERIOR = "near_vertex_exterior"


@dataclass(frozen=True)
class GuardAnchor:
    """Where a tower pair goes and which side of its line it serves.

    ``segment`` is the support segment (a, b); towers start at ``a`` and
    step towards ``b``.  ``edge`` is the piece edge holding the segment, or
    the vertex index for the vertex-based placements.
    """

    piece: int
    kind: PlacementKind
    segment: tuple
    side: Side
    edge: int = -1
    neighbor: int = -1

    @property
    def support_line(self):
        return self.segment


@dataclass
class TraceEntry:
    depth: int
    label: str
    n: int
    chain: tuple = ()
    sizes: tuple = ()
    certificate: Optional[object] = None


@dataclass(frozen=True)
class MultiCertificate:
    """Budget check for a split into more than two parts."""

    n: int
    sizes: tuple
    budget: int
    holds: bool


@dataclass
class PartitionResult:
    polygon: PolygonStar
    pieces: list
    anchors: list
    trace: list
    leaf_labels: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.polygon.n


class PartitionError(RuntimeError):
    pass


# --------------------------------------------------------------------------
# reflex base case
# --------------------------------------------------------------------------

def _l1(v: Point) -> Fraction:
    return abs(v.x) + abs(v.y)


def _reflex_directions(p: PolygonStar, i: int):
    """Rational directions strictly inside the reflex wedge at vertex i."""
    pts = p.points
    v = pts[i]
    e1 = pts[i - 1] - v
    e2 = pts[(i + 1) % p.n] - v
    yield Point(-(e1.x + e2.x), -(e1.y + e2.y))
    u1 = e1.scale(1 / _l1(e1))
    u2 = e2.scale(1 / _l1(e2))
    for w in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 5), Fraction(4, 5)):
        yield Point(-(w * u1.x + (1 - w) * u2.x), -(w * u1.y + (1 - w) * u2.y))


def _reflex_count(p: PolygonStar) -> int:
    return len(p.reflex_indices())


def _split_at_reflex(p: PolygonStar, i: int):
    v = p.points[i]
    before = _reflex_count(p)
    for d in _reflex_directions(p, i):
        h = ray_first_hit(p.points, v, d)
        if h is None:
            continue
        dis = make_dissection(p, (v, h[1]), DissectionKind.REFLEX_BISECTOR, "reflex-cut")
        if dis is None:
            continue
        if _reflex_count(dis.left_piece) + _reflex_count(dis.right_piece) < before:
            return dis
    return None


def bisect_reflex_base_case(p: PolygonStar):
    """Cut reflex angles until every piece has at most one reflex vertex.

    Each cut runs from a reflex vertex along a rational direction inside its
    wedge, leaving angles below pi on both sides.  ``r`` reflex vertices
    give at most ``max(r, 1)`` pieces.  Returns ``(pieces, cuts)``.
    """
    k = p.n // 3
    r = _reflex_count(p)
    if r > max(k, 1) and p.n >= 3:
        raise ValueError(f"base case needs at most {k} reflex angles, found {r}")
    pieces = [p]
    cuts = []
    guard = 0
    while True:
        guard += 1
        if guard > 4 * p.n:
            raise PartitionError("reflex base case did not converge")
        idx = next((j for j, q in enumerate(pieces) if _reflex_count(q) >= 2), None)
        if idx is None:
            break
        q = pieces[idx]
        dis = None
        for i in q.reflex_indices():
            dis = _split_at_reflex(q, i)
            if dis is not None:
                break
        if dis is None:
            raise PartitionError("no reflex cut reduces the reflex count")
        cuts.append(dis)
        pieces[idx:idx + 1] = [dis.left_piece, dis.right_piece]
    return pieces, cuts


# --------------------------------------------------------------------------
# leaves and anchors
# --------------------------------------------------------------------------

def leaf_segments(p: PolygonStar) -> list:
    k = kernel(p)
    if k.empty:
        return []
    return kernel_boundary_segments(p, k)


# --------------------------------------------------------------------------
# candidate enumeration
# --------------------------------------------------------------------------

def _edge_extension_candidates(p: PolygonStar):
    pts = p.points
    n = p.n
    for i in p.reflex_indices():
        v = pts[i]
        for nb in ((i - 1) % n, (i + 1) % n):
            h = ray_first_hit(pts, v, v - pts[nb])
            if h is None:
                continue
            d = make_dissection(p, (v, h[1]), DissectionKind.EDGE_EXTENSION, "edge-extension")
            if d is not None and d.certificate.holds:
                yield d


def _extension_rays(p: PolygonStar):
    pts = p.points
    n = p.n
    for i in p.reflex_indices():
        v = pts[i]
        for nb in ((i - 1) % n, (i + 1) % n):
            h = ray_first_hit(pts, v, v - pts[nb])
            if h is not None:
                yield i, v, v - pts[nb], h[0]


def _two_segment_candidates(p: PolygonStar):
    rays = list(_extension_rays(p))
    for a in range(len(rays)):
        for b in range(a + 1, len(rays)):
            i, v, dv, tv = rays[a]
            j, w, dw, tw = rays[b]
            if i == j:
                continue
            m = ray_meet(v, dv, w, dw)
            if m is None:
                continue
            q, t, u = m
            if t >= tv or u >= tw:
                continue
            d = make_dissection(p, (v, q, w), DissectionKind.TWO_SEGMENT, "two-segment")
            if d is not None and d.certificate.holds:
                yield d


def _diagonal_extension_candidates(p: PolygonStar):
    pts = p.points
    n = p.n
    for i in p.reflex_indices():
        v = pts[i]
        for j in range(n):
            if j == i:
                continue
            h = ray_first_hit(pts, v, v - pts[j])
            if h is None:
                continue
            d = make_dissection(p, (v, h[1]), DissectionKind.RAY, "diagonal-extension")
            if d is not None and d.certificate.holds:
                yield d


# --------------------------------------------------------------------------
# driver
# --------------------------------------------------------------------------

@dataclass
class _Leaf:
    piece: PolygonStar
    label: str
    segments: list = field(default_factory=list)
    exterior: Optional[tuple] = None


class _Stuck(Exception):
    pass


class Partitioner:
    def __init__(self, root: PolygonStar, step_budget: int = 20000):
        self.root = root
        self.steps = 0
        self.step_budget = step_budget
        self.failed = set()
        self.repartitions = 0

    def _tick(self):
        self.steps += 1
        if self.steps > self.step_budget:
            raise PartitionError(f"partition exceeded its step budget of {self.step_budget}")

    def solve(self, p: PolygonStar, depth: int):
        """Returns (leaves, trace) or raises _Stuck."""
        self._tick()
        try:
            p = simplify(p)
        except Degenerate as exc:
            raise _Stuck(str(exc))
        key = p.key()
        if key in self.failed:
            raise _Stuck("known dead end")
        n = p.n
        segs = leaf_segments(p)
        if segs:
            label = "small-leaf" if n <= 5 else "star-leaf"
            return [_Leaf(p, label, segs)], [TraceEntry(depth, label, n)]
        if n <= 5:
            self.failed.add(key)
            raise _Stuck("small piece without kernel boundary segment")
        k = n // 3
        if len(p.reflex_indices()) <= k:
            try:
                pieces, cuts = bisect_reflex_base_case(p)
                leaves = []
                for q in pieces:
                    s = leaf_segments(q)
                    if not s:
                        raise PartitionError("base-case piece has no kernel boundary segment")
                    leaves.append(_Leaf(q, "reflex-base", s))
                if len(leaves) <= k:
                    trace = [TraceEntry(depth, "reflex-base", n, tuple(c.chain for c in cuts),
                                        tuple(q.n for q in pieces))]
                    return leaves, trace
            except (PartitionError, ValueError):
                pass
        for label, d in self._candidates(p):
            try:
                l1, t1 = self.solve(d.left_piece, depth + 1)
                l2, t2 = self.solve(d.right_piece, depth + 1)
            except _Stuck:
                self.repartitions += 1
                continue
            entry = TraceEntry(depth, label, n, d.chain, (d.left_piece.n, d.right_piece.n),
                               d.certificate)
            return l1 + l2, [entry] + t1 + t2
        result = self._fan(p, depth)
        if result is not None:
            return result
        self.failed.add(key)
        raise _Stuck(f"no good dissection for a {n}-gon")

    def _candidates(self, p: PolygonStar):
        seen = set()

        def fresh(d):
            if d is None or d.chain in seen:
                return False
            seen.add(d.chain)
            return True

        reports = list(iter_good_diagonals(p))
        plain = [r for r in reports if not r.interior]
        one = [r for r in reports if len(r.interior) == 1]
        two = [r for r in reports if len(r.interior) == 2]
        for r in plain:
            if fresh(r.dissection):
                yield "diagonal", r.dissection
        for r in one:
            for d in dissect_case_study(p, r):
                if fresh(d):
                    yield "case-study", d
        for d in _edge_extension_candidates(p):
            if fresh(d):
                yield "edge-extension", d
        for r in two:
            ds, _req = dissect_point_kernel(p, r)
            for d in ds:
                if fresh(d):
                    yield "point-kernel", d
        for d in leaf_candidates(p):
            if fresh(d):
                yield d.label or "leaf", d
        for d in _two_segment_candidates(p):
            if fresh(d):
                yield "two-segment", d
        for d in _diagonal_extension_candidates(p):
            if fresh(d):
                yield "diagonal-extension", d

    def _fan(self, p: PolygonStar, depth: int):
        try:
            t = triangulate(p)
        except Degenerate:
            return None
        n = p.n
        for apex in range(n):
            fs = fan_split(p, t, apex)
            if fs is None or not fs.budget_ok:
                continue
            segs = leaf_segments(fs.fan)
            if not segs:
                continue
            try:
                leaves = [_Leaf(fs.fan, "fan", segs)]
                trace = []
                for r in fs.rest:
                    lr, tr = self.solve(r, depth + 1)
                    leaves += lr
                    trace += tr
            except _Stuck:
                continue
            sizes = (fs.fan.n,) + tuple(r.n for r in fs.rest)
            cert = MultiCertificate(n, sizes, 1 + sum(r.n // 3 for r in fs.rest), True)
            return leaves, [TraceEntry(depth, "fan", n, (p.points[apex],), sizes, cert)] + trace
        return None


def partition(p, step_budget: int = 20000) -> PartitionResult:
    """Partition a simple polygon into at most floor(n/3) star-shaped pieces."""
    if isinstance(p, SimplePolygon):
        root = p.to_star()
    elif isinstance(p, PolygonStar):
        root = p
    else:
        root = PolygonStar(p)
    solver = Partitioner(root, step_budget)
    try:
        leaves, trace = solver.solve(root, 0)
    except _Stuck as exc:
        raise PartitionError(f"partition failed: {exc}") from None
    pieces = [lf.piece for lf in leaves]
    anchors = _break_shared_lines(root, pieces, choose_anchors(leaves))
    if len(anchors) > root.n // 3 and root.n >= 3:
        raise PartitionError(f"{len(anchors)} anchors exceed the budget {root.n // 3}")
    return PartitionResult(root, pieces, anchors, trace, [lf.label for lf in leaves])


# --------------------------------------------------------------------------
# anchor selection
# --------------------------------------------------------------------------

def _line_key(a: Point, b: Point):
    """Canonical normalized line through a and b (exact)."""
    # line: A x + B y = C with a fixed normalization
    A = b.y - a.y
    B = a.x - b.x
    C = A * a.x + B * a.y
    if A != 0:
        return (Fraction(1), B / A, C / A)
    return (Fraction(0), Fraction(1), C / B)


def _seg_len2(seg):
    a, b = seg[1], seg[2]
    return (a.x - b.x) ** 2 + (a.y - b.y) ** 2


def choose_anchors(leaves) -> list:
    """Pick one kernel boundary segment per piece.

    Pieces whose pairs share a support line leave an agent seeing both pairs
    with a mirror ambiguity that parity cannot settle, so segments are
    assigned to pieces with pairwise distinct lines whenever possible
    (backtracking, pieces with fewest choices first).  Within a piece longer
    segments are preferred, then lower edge index.
    """
    options = []
    for lf in leaves:
        segs = sorted(lf.segments, key=lambda s: (-_seg_len2(s), s[0]))
        options.append(segs)
    pick = _assign_lines(options)
    used_points = set()
    anchors = []
    for pid, lf in enumerate(leaves):
        edge, s0, s1 = pick[pid]
        # tower 1 at the lexicographically smaller end; move it off a point
        # already holding another piece's tower
        a, b = (s0, s1) if (s0.x, s0.y) < (s1.x, s1.y) else (s1, s0)
        if a in used_points:
            a, b = b, a
        if a in used_points:
            a = Point((a.x + b.x) / 2, (a.y + b.y) / 2)
        used_points.add(a)
        side = _side_of(lf.piece, a, b)
        anchors.append(GuardAnchor(pid, PlacementKind.ON_SEGMENT, (a, b), side, edge))
    return anchors


def _break_shared_lines(root: PolygonStar, pieces, anchors) -> list:
    """Send one pair of each same-line collision to the far side of its line.

    The moved anchor becomes NEAR_VERTEX_EXTERIOR: its towers will sit just
    across the support line inside the neighbouring piece, parallel to it.
    """
    anchors = list(anchors)
    for i, j in shared_lines(anchors):
        if anchors[i].kind is not PlacementKind.ON_SEGMENT or anchors[j].kind is not PlacementKind.ON_SEGMENT:
            continue
        for k in (j, i):
            nb = _neighbor_across(root, pieces, anchors[k])
            if nb is not None:
                a = anchors[k]
                anchors[k] = GuardAnchor(a.piece, PlacementKind.NEAR_VERTEX_EXTERIOR, a.segment,
                                         a.side, a.edge, nb)
                break
        else:
            log.warning("anchors %d and %d share a support line and neither can move", i, j)
    return anchors


def _outward_normal(anchor: GuardAnchor) -> Point:
    """Rational normal of the support line pointing away from the piece."""
    a, b = anchor.segment
    d = b - a
    nrm = Point(-d.y, d.x).scale(Fraction(1) / max(abs(d.x), abs(d.y)))
    # left normal; the piece is on the left for LEFT, so flip
    return Point(-nrm.x, -nrm.y) if anchor.side is Side.LEFT else nrm


def _neighbor_across(root: PolygonStar, pieces, anchor: GuardAnchor):
    a, b = anchor.segment
    mid = Point((a.x + b.x) / 2, (a.y + b.y) / 2)
    nrm = _outward_normal(anchor)
    # probe just across the line so the piece found really borders the segment
    for j in range(24, 48):
        q = mid + nrm.scale(Fraction(1, 3 ** j))
        if locate_point(root.points, q) != 1:
            continue
        for pid, pc in enumerate(pieces):
            if pid != anchor.piece and locate_point(pc.points, q) == 1:
                return pid
    return None


def shared_lines(anchors) -> list:
    """Pairs of anchor indices whose support lines coincide."""
    keys = [_line_key(*a.segment) for a in anchors]
    return [(i, j) for i in range(len(keys)) for j in range(i + 1, len(keys)) if keys[i] == keys[j]]


def _assign_lines(options, budget: int = 20000):
    order = sorted(range(len(options)), key=lambda i: (len(options[i]), i))
    keys = [[_line_key(s[1], s[2]) for s in opts] for opts in options]
    choice = {}
    used = set()
    steps = [0]

    def rec(k):
        if k == len(order):
            return True
        steps[0] += 1
        if steps[0] > budget:
            return False
        i = order[k]
        for j, key in enumerate(keys[i]):
            if key in used:
                continue
            used.add(key)
            choice[i] = j
            if rec(k + 1):
                return True
            used.discard(key)
        return False

    if rec(0):
        return [options[i][choice[i]] for i in range(len(options))]
    # no conflict-free assignment: greedy, collisions handled downstream
    used.clear()
    out = [None] * len(options)
    for i in order:
        free = [s for s, key in zip(options[i], keys[i]) if key not in used]
        s = free[0] if free else options[i][0]
        used.add(_line_key(s[1], s[2]))
        out[i] = s
    return out


def _side_of(p: PolygonStar, a: Point, b: Point) -> Side:
    """Which closed side of the directed line ab holds the whole piece."""
    left = right = False
    for q in p.points:
        o = orient(a, b, q)
        if o > 0:
            left = True
        elif o < 0:
            right = True
    if left and right:
        raise PartitionError("piece straddles its anchor line")
    return Side.RIGHT if right else Side.LEFT
