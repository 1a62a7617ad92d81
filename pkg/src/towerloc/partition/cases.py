"""Targeted dissection constructions.

Each function proposes cuts built from the local configuration (a diagonal
through polygon vertices, a short or long leaf of the triangulation dual,
a fan around a convex vertex).  Every proposal is validated exactly by
:func:`make_dissection` and kept only if its goodness certificate holds, so
a construction that does not apply to a particular polygon simply yields
nothing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..geom import Point, orient, ray_first_hit
from ..polygon import (
    NodeKind,
    PolygonStar,
    Triangulation,
    dual_graph,
    retriangulate_fan_nondegenerate,
    simplify,
    triangulate,
    Degenerate,
)
from .dissection import (
    DiagonalReport,
    Dissection,
    DissectionKind,
    is_diagonal,
    make_dissection,
    ray_meet,
)


class PreconditionError(ValueError):
    pass


@dataclass
class ConvexAngleWitness:
    """The leaf's diagonal endpoint with an interior angle below pi."""

    vertex: int


@dataclass
class RepartitionRequest:
    """Ask the driver to re-run the partition on a merged region."""

    reason: str


def _good(d: Optional[Dissection]) -> Optional[Dissection]:
    if d is not None and d.certificate.holds:
        return d
    return None


def _diag(p: PolygonStar, i: int, j: int, label: str) -> Optional[Dissection]:
    if i == j or (i - j) % p.n in (1, p.n - 1):
        return None
    return _good(make_dissection(p, (p.points[i], p.points[j]), DissectionKind.DIAGONAL, label))


def _chain_size(n: int, i: int, j: int) -> int:
    """Vertices on the boundary walk from i to j inclusive."""
    return (j - i) % n + 1


# --------------------------------------------------------------------------
# diagonals through one polygon vertex
# --------------------------------------------------------------------------

def dissect_case_study(p: PolygonStar, rep: DiagonalReport) -> list:
    """Replace a good diagonal v1v3 through a vertex v2 by a sub-diagonal.

    The choice follows the residues of n and of the size n_a of the part
    cut off by v1v2.  An empty list means the sub-diagonals do not help and
    the full diagonal would be unavoidable.
    """
    if len(rep.interior) != 1:
        raise PreconditionError("case study needs exactly one vertex inside the diagonal")
    n = p.n
    i, j = rep.i, rep.j
    k = rep.interior[0]
    # orient so that v2 sits on the walk v1 -> v3
    if (k - i) % n < (j - i) % n:
        v1, v3 = i, j
    else:
        v1, v3 = j, i
    v2 = k
    n_a = _chain_size(n, v1, v2)
    n_b = _chain_size(n, v2, v3)
    n2 = _chain_size(n, v1, v3)
    n1 = n - n2 + 2
    order = []
    q = n % 3
    if q == 0:
        order = [(v1, v2)] if n_a > 2 else [(v2, v3)]
    elif q == 1:
        if n_a == 2:
            order = [(v2, v3)]
        elif n_b == 2:
            order = [(v1, v2)]
        elif n_a % 3 in (1, 2):
            order = [(v1, v2)]
        elif n1 % 3 == 2:
            order = [(v2, v3)]
    else:
        if n_a == 2:
            order = [(v2, v3)]
        elif n_b == 2:
            order = [(v1, v2)]
    out = []
    for a, b in order:
        d = _diag(p, a, b, f"case-study n%3={q}")
        if d is not None:
            out.append(d)
    return out


# --------------------------------------------------------------------------
# diagonals through two polygon vertices
# --------------------------------------------------------------------------

def dissect_point_kernel(p: PolygonStar, rep: DiagonalReport):
    """Avoid a good diagonal v1v4 that runs through two vertices v2, v3.

    Tries v2v3 first (it destroys the diagonal), then the four shorter
    sub-diagonals, then the cuts from v3 into the part beyond v2: the
    neighbour diagonal v2'v3, diagonals from v3 to vertices whose label is
    2 mod 3, and the extension of the edge v3'v3.  Returns the list of good
    dissections found and a repartition request when none exists.
    """
    if len(rep.interior) != 2:
        raise PreconditionError("point-kernel handling needs two vertices inside the diagonal")
    n = p.n
    pts = p.points
    a, b = rep.i, rep.j
    inner = sorted(rep.interior, key=lambda t: (pts[t].x - pts[a].x) ** 2 + (pts[t].y - pts[a].y) ** 2)
    v1, v4 = a, b
    v2, v3 = inner
    out = []
    seen = set()

    def add(d):
        if d is not None and d.chain not in seen:
            seen.add(d.chain)
            out.append(d)

    for x, y, lab in ((v2, v3, "point-kernel v2v3"), (v1, v3, "point-kernel v1v3"),
                      (v1, v2, "point-kernel v1v2"), (v3, v4, "point-kernel v3v4"),
                      (v2, v4, "point-kernel v2v4")):
        add(_diag(p, x, y, lab))
    # walk from v2 into the region beyond it, labelling vertices 1, 2, ...
    for s, t in ((v2, v3), (v3, v2)):
        for step in (1, -1):
            label = 1
            idx = s
            for _ in range(n):
                idx = (idx + step) % n
                label += 1
                if idx in (v1, v4, t):
                    break
                if label % 3 == 2:
                    add(_diag(p, t, idx, "point-kernel label cut"))
            nb = (t + step) % n
            if nb not in (v1, v4, s):
                origin = pts[t]
                hit = ray_first_hit(pts, origin, origin - pts[nb])
                if hit is not None:
                    add(_good(make_dissection(p, (origin, hit[1]), DissectionKind.EDGE_EXTENSION,
                                              "point-kernel edge-extension")))
    request = None if out else RepartitionRequest("no sub-cut avoids the two-vertex diagonal")
    return out, request


# --------------------------------------------------------------------------
# mirror helpers
# --------------------------------------------------------------------------

def _mirror(p: PolygonStar) -> PolygonStar:
    pts = [Point(-q.x, q.y) for q in reversed(p.points)]
    org = list(reversed(p.original))
    return PolygonStar(pts, org)


def _unmirror_chain(chain):
    return tuple(Point(-q.x, q.y) for q in chain)


def _mirror_tri(n: int, tri):
    return tuple(n - 1 - v for v in tri)


def _leaf_apex(t: Triangulation, tri) -> Optional[int]:
    """The vertex of a leaf triangle whose two sides are polygon edges."""
    n = t.n
    for v in tri:
        others = [u for u in tri if u != v]
        if all((u - v) % n in (1, n - 1) for u in others):
            return v
    return None


def _ray_hit(p: PolygonStar, origin: Point, direction: Point):
    h = ray_first_hit(p.points, origin, direction)
    return None if h is None else h[1]


def _cut(p, chain, kind, label):
    if any(c is None for c in chain):
        return None
    return _good(make_dissection(p, chain, kind, label))


# --------------------------------------------------------------------------
# short leaves
# --------------------------------------------------------------------------

def _triangle_ok(p: PolygonStar, a: int, c: int, x: int) -> bool:
    n = p.n
    pts = p.points
    if x in (a, c):
        return False
    for u, w in ((a, x), (c, x)):
        if (u - w) % n in (1, n - 1):
            continue
        if not is_diagonal(p, u, w):
            return False
    if orient(pts[a], pts[c], pts[x]) < 0:
        return False
    for k in range(n):
        if k in (a, c, x):
            continue
        q = pts[k]
        if (orient(pts[a], pts[c], q) > 0 and orient(pts[c], pts[x], q) > 0
                and orient(pts[x], pts[a], q) > 0):
            return False
    return True


def _short_leaf_core(p: PolygonStar, B: int):
    """Short-leaf constructions with the reflex corner of ABCD at C."""
    n = p.n
    pts = p.points
    A, C = (B - 1) % n, (B + 1) % n
    # D candidates sorted by the size of the part beyond AD (smallest first)
    ds = [x for x in range(n) if x not in (A, B, C) and _triangle_ok(p, A, C, x)]
    ds.sort(key=lambda x: _chain_size(n, x, A))
    for D in ds:
        D0 = (D + 1) % n
        a_, b_, c_, d_, d0 = pts[A], pts[B], pts[C], pts[D], pts[D0]
        turn = orient(d0, d_, c_)
        cprime = _ray_hit(p, c_, c_ - b_)
        if turn > 0:
            # angle D0 D C below pi in the piece beyond CD
            yield _cut(p, (c_, cprime), DissectionKind.EDGE_EXTENSION, "short-leaf CC'")
        elif turn == 0:
            yield _diag(p, C, D, "short-leaf CD")
        else:
            d0p = _ray_hit(p, d_, d_ - d0)
            m = ray_meet(d_, d_ - d0, c_, c_ - b_)
            if m is not None:
                q = m[0]
                yield _cut(p, (d_, q, c_), DissectionKind.TWO_SEGMENT, "short-leaf DQ+QC")
            yield _cut(p, (d_, d0p), DissectionKind.EDGE_EXTENSION, "short-leaf DD0'")
            yield _cut(p, (c_, cprime), DissectionKind.EDGE_EXTENSION, "short-leaf CC'")
            aprime = _ray_hit(p, a_, a_ - b_)
            yield _cut(p, (a_, aprime), DissectionKind.EDGE_EXTENSION, "short-leaf AA'")
            # collinear A, C, D lying on a longer edge IJ: diagonals IA, CJ, ID
            for k in range(n):
                I, J = k, (k + 1) % n
                if I in (A, C, D) or J in (A, C, D):
                    continue
                if orient(pts[I], pts[J], a_) == 0 and orient(pts[I], pts[J], d_) == 0:
                    for x, y, lab in ((I, A, "short-leaf IA"), (C, J, "short-leaf CJ"),
                                      (I, D, "short-leaf ID")):
                        yield _diag(p, x, y, lab)


def dissect_short_leaf(p: PolygonStar, t: Triangulation, leaf: int):
    """Good dissection from a short leaf, or a witness of a convex corner.

    Both mirror images are tried so either diagonal endpoint may carry the
    reflex angle of the quadrilateral ABCD.
    """
    dg = dual_graph(t)
    if dg.kinds[leaf] is not NodeKind.SHORT_LEAF:
        raise PreconditionError("triangle is not a short leaf")
    B = _leaf_apex(t, t.triangles[leaf])
    if B is None:
        raise PreconditionError("leaf triangle has no apex with two polygon edges")
    found = _first(_short_leaf_core(p, B))
    if found is not None:
        return found
    mp = _mirror(p)
    for d in _short_leaf_core(mp, p.n - 1 - B):
        if d is None:
            continue
        real = _good(make_dissection(p, _unmirror_chain(d.chain), d.kind, d.label + " (mirrored)"))
        if real is not None:
            return real
    return _convex_witness(p, B)


def _first(gen):
    for d in gen:
        if d is not None:
            return d
    return None


def _convex_witness(p: PolygonStar, B: int):
    n = p.n
    for v in ((B - 1) % n, (B + 1) % n):
        if orient(p.points[v - 1], p.points[v], p.points[(v + 1) % n]) > 0:
            return ConvexAngleWitness(v)
    return None


# --------------------------------------------------------------------------
# long leaves
# --------------------------------------------------------------------------

def _visible_from(p: PolygonStar, o: int, v: int) -> bool:
    n = p.n
    if (o - v) % n in (0,):
        return False
    if (o - v) % n in (1, n - 1):
        return True
    return is_diagonal(p, o, v)


def _long_leaf_core(p: PolygonStar, B: int):
    """Long-leaf constructions; labels v0 = A, v1 = A0, ..., v_{n-1} = B."""
    n = p.n
    pts = p.points
    A, C = (B - 1) % n, (B + 1) % n
    D = (C + 1) % n
    D0 = (D + 1) % n
    A0 = (A - 1) % n
    a_, b_, c_, d_ = pts[A], pts[B], pts[C], pts[D]
    turn = orient(pts[D0], d_, c_)
    if turn < 0:
        # angle at D above pi: choose by the residue of the part beyond DD'
        dprime = _ray_hit(p, d_, d_ - c_)
        cprime = _ray_hit(p, c_, c_ - b_)
        bprime = _ray_hit(p, a_, a_ - b_)
        cands = [
            (d_, dprime, "long-leaf DD'"),
            (c_, cprime, "long-leaf CC'"),
            (a_, bprime, "long-leaf AB'"),
        ]
        if dprime is not None:
            d1 = make_dissection(p, (d_, dprime), DissectionKind.RAY, "probe")
            if d1 is not None:
                side = d1.left_piece if pts[D0] in d1.left_piece.points else d1.right_piece
                q1 = side.n % 3
                pick = {2: 0, 1: 1, 0: 2}[q1]
                cands = [cands[pick]] + [c for i, c in enumerate(cands) if i != pick]
        for x, y, lab in cands:
            yield _cut(p, (x, y), DissectionKind.EDGE_EXTENSION, lab)
        return
    a0p = _ray_hit(p, a_, a_ - pts[A0])
    yield _cut(p, (a_, a0p), DissectionKind.EDGE_EXTENSION, "long-leaf AA0'")
    # rotate the ray from D through A towards A0, visiting visible vertices
    # labels run away from B: v_0 = A, v_1 = A0, ..., v_{n-3} = D
    lab_of = {(A - s) % n: s for s in range(n)}
    visible = [v for v in range(n) if v not in (A, B, C, D) and _visible_from(p, D, v)]
    visible.sort(key=lambda v: lab_of[v])
    last_multiple = None
    for v in visible:
        i = lab_of[v]
        if v == D0:
            break
        if i % 3 == 1:
            nxt = (v - 1) % n  # v_{i+1}
            x1 = _ray_hit(p, pts[v], pts[v] - pts[nxt])
            yield _cut(p, (pts[v], x1), DissectionKind.EDGE_EXTENSION, "long-leaf v_iX1")
        elif i % 3 == 2:
            prv = (v + 1) % n  # v_{i-1}
            x2 = _ray_hit(p, pts[v], pts[v] - pts[prv])
            yield _cut(p, (pts[v], x2), DissectionKind.EDGE_EXTENSION, "long-leaf v_iX2")
        else:
            last_multiple = v
    if last_multiple is not None:
        vz = last_multiple
        yield _diag(p, vz, A, "long-leaf v_zA")
        aprime = _ray_hit(p, a_, a_ - c_)
        if aprime is not None:
            m = ray_meet(pts[vz], pts[vz] - pts[D0], a_, aprime - a_)
            if m is not None and m[2] <= 1:
                z = m[0]
                yield _cut(p, (a_, z, pts[vz]), DissectionKind.TWO_SEGMENT, "long-leaf AZ+Zv_z")
        yield _diag(p, vz, D0, "long-leaf v_zD0")


def dissect_long_leaf(p: PolygonStar, t: Triangulation, leaf: int):
    """Good dissection from a long leaf, or a witness of a convex corner."""
    dg = dual_graph(t)
    if dg.kinds[leaf] is not NodeKind.LONG_LEAF:
        raise PreconditionError("triangle is not a long leaf")
    B = _leaf_apex(t, t.triangles[leaf])
    if B is None:
        raise PreconditionError("leaf triangle has no apex with two polygon edges")
    found = _first(_long_leaf_core(p, B))
    if found is not None:
        return found
    mp = _mirror(p)
    for d in _long_leaf_core(mp, p.n - 1 - B):
        if d is None:
            continue
        real = _good(make_dissection(p, _unmirror_chain(d.chain), d.kind, d.label + " (mirrored)"))
        if real is not None:
            return real
    return _convex_witness(p, B)


def leaf_candidates(p: PolygonStar):
    """All short/long leaf dissections over the default triangulation."""
    try:
        t = triangulate(p)
    except Degenerate:
        return
    dg = dual_graph(t)
    mp = None
    for leaf, kind in enumerate(dg.kinds):
        if kind not in (NodeKind.SHORT_LEAF, NodeKind.LONG_LEAF):
            continue
        B = _leaf_apex(t, t.triangles[leaf])
        if B is None:
            continue
        core = _short_leaf_core if kind is NodeKind.SHORT_LEAF else _long_leaf_core
        for d in core(p, B):
            if d is not None:
                yield d
        if mp is None:
            mp = _mirror(p)
        for d in core(mp, p.n - 1 - B):
            if d is None:
                continue
            real = _good(make_dissection(p, _unmirror_chain(d.chain), d.kind, d.label + " (mirrored)"))
            if real is not None:
                yield real


# --------------------------------------------------------------------------
# fan around a convex vertex
# --------------------------------------------------------------------------

@dataclass
class FanSplit:
    apex: int
    fan: PolygonStar
    rest: list
    budget_ok: bool


def fan_split(p: PolygonStar, t: Triangulation, apex: int) -> Optional[FanSplit]:
    """Cut off all triangles incident to a convex apex.

    The fan needs one anchor; each remaining part is bounded by a fan-side
    diagonal.  ``budget_ok`` tells whether 1 + sum(floor(n_i/3)) stays
    within floor(n/3).
    """
    n = p.n
    pts = p.points
    if orient(pts[apex - 1], pts[apex], pts[(apex + 1) % n]) <= 0:
        return None
    try:
        t = retriangulate_fan_nondegenerate(t, apex)
    except (Degenerate, ValueError):
        return None
    rim = set()
    for tri in t.triangles:
        if apex in tri:
            rim.update(v for v in tri if v != apex)
    ring = sorted(rim, key=lambda v: (v - apex) % n)
    fan = PolygonStar([pts[apex]] + [pts[v] for v in ring],
                      [p.original[apex]] + [p.original[v] for v in ring])
    rest = []
    for u, w in zip(ring, ring[1:]):
        if (w - u) % n == 1:
            continue
        idx = [(u + s) % n for s in range((w - u) % n + 1)]
        piece = PolygonStar([pts[v] for v in idx], [p.original[v] for v in idx])
        try:
            rest.append(simplify(piece))
        except Degenerate:
            return None
    try:
        fan = simplify(fan)
    except Degenerate:
        return None
    total = fan.area2() + sum(r.area2() for r in rest)
    if total != p.area2():
        return None
    budget = 1 + sum(r.n // 3 for r in rest)
    return FanSplit(apex, fan, rest, budget <= n // 3)
