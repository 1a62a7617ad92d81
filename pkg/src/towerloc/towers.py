"""Tower placement with the parity distance code.

A pair of towers serving a piece sits on a support segment ab: tower 1 at a
and tower 2 at a + (m / 3^(s+1)) * unit(b - a).  Their separation is the
reduced rational m / 3^(s+1); an even numerator (m = 2) says the piece lies
left of the line directed from the lexicographically smaller tower to the
larger one, an odd one (m = 1) says right.  An agent receives coordinates
without labels, so the direction has to be recoverable from them alone.

Tower 2 is irrational whenever |ab| is, so the exact form is kept symbolic
as (a, b, m, s); floats are produced from a high-precision decimal
evaluation and rounded once.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional, Sequence

from .geom import FloatPoint, Point, locate_point, orient, segment_inside
from .partition.algorithm import GuardAnchor, PartitionResult, PlacementKind, Side
from .polygon import PolygonStar
from .visibility import Kernel, KernelKind, kernel

log = logging.getLogger(__name__)

_DIGITS = 60


class TowerError(ValueError):
    pass


class TowerBudgetExceeded(RuntimeError):
    pass


def choose_s(seg_length_squared) -> int:
    """Smallest s >= 1 with 1/9^s <= |ab|^2."""
    L2 = Fraction(seg_length_squared)
    if L2 <= 0:
        raise ValueError("segment length must be positive")
    s = 1
    p = Fraction(1, 9)
    while p > L2:
        s += 1
        p /= 9
    return s


def _dec(q: Fraction) -> Decimal:
    return Decimal(q.numerator) / Decimal(q.denominator)


def _round(q: Decimal) -> float:
    return float(q)


@dataclass(frozen=True)
class PlacedTower:
    """One tower: float coordinates for the wire plus its exact provenance."""

    x: float
    y: float
    piece: int
    side: Side
    anchor_a: Point
    anchor_b: Point
    m: int
    s: int
    which: int

    @property
    def point(self) -> FloatPoint:
        return FloatPoint(self.x, self.y)

    def lam2(self) -> Fraction:
        """Squared step factor along (b - a); 0 for tower 1."""
        if self.which == 1 or self.m == 0:
            return Fraction(0)
        return Fraction(self.m * self.m, 9 ** (self.s + 1)) / _len2(self.anchor_a, self.anchor_b)

    def decimal(self):
        """High-precision decimal coordinates (x, y)."""
        return _tower_decimal(self.anchor_a, self.anchor_b, self.m, self.s, self.which)


@dataclass(frozen=True)
class TowerPair:
    """Tower 1 at anchor_a, tower 2 towards anchor_b.

    ``side`` is relative to the line from the lexicographically smaller
    (float) tower to the larger one, so m == 2 exactly when side is LEFT.
    """

    anchor_a: Point
    anchor_b: Point
    m: int
    s: int
    side: Side
    piece: int

    @property
    def distance(self) -> Fraction:
        """Exact separation d(t1, t2) = m / 3^(s+1)."""
        return Fraction(self.m, 3 ** (self.s + 1))

    def towers(self) -> list:
        out = []
        for which in (1, 2):
            x, y = _tower_decimal(self.anchor_a, self.anchor_b, self.m, self.s, which)
            out.append(PlacedTower(_round(x), _round(y), self.piece, self.side,
                                   self.anchor_a, self.anchor_b, self.m, self.s, which))
        return out

    def separation_squared(self) -> Fraction:
        """|t2 - t1|^2 from the symbolic form: lambda^2 |b - a|^2."""
        L2 = _len2(self.anchor_a, self.anchor_b)
        lam2 = Fraction(self.m * self.m, 9 ** (self.s + 1)) / L2
        return lam2 * L2


@dataclass(frozen=True)
class TowerTriple:
    points: tuple
    piece: int

    def towers(self) -> list:
        return [PlacedTower(float(p.x), float(p.y), self.piece, Side.LEFT, p, p, 0, 0, 0)
                for p in self.points]


def _len2(a: Point, b: Point) -> Fraction:
    return (b.x - a.x) ** 2 + (b.y - a.y) ** 2


def _tower_decimal(a: Point, b: Point, m: int, s: int, which: int):
    with localcontext() as ctx:
        ctx.prec = _DIGITS
        ax, ay = _dec(a.x), _dec(a.y)
        if which != 2:
            return ax, ay
        L = _dec(_len2(a, b)).sqrt()
        f = Decimal(m) / (Decimal(3) ** (s + 1)) / L
        return ax + f * _dec(b.x - a.x), ay + f * _dec(b.y - a.y)


def place_pair(anchor: GuardAnchor) -> TowerPair:
    """Tower pair on the anchor's support segment; m encodes the side."""
    a, b = anchor.segment
    L2 = _len2(a, b)
    if L2 == 0:
        raise TowerError(f"zero-length support segment for piece {anchor.piece}")
    s = choose_s(L2)
    return _oriented_pair(a, b, s, anchor.side, anchor.piece)


def _oriented_pair(a: Point, b: Point, s: int, side_ab: Side, piece: int) -> TowerPair:
    """Pick m from the side of the piece relative to the decoder's direction."""
    t1 = _tower_decimal(a, b, 1, s, 1)
    t2 = _tower_decimal(a, b, 1, s, 2)
    f1 = (_round(t1[0]), _round(t1[1]))
    f2 = (_round(t2[0]), _round(t2[1]))
    # both m values give the same direction, so m=1 suffices for the order
    side = side_ab if f1 < f2 else _flip(side_ab)
    m = 2 if side is Side.LEFT else 1
    return TowerPair(a, b, m, s, side, piece)


def _flip(side: Side) -> Side:
    return Side.RIGHT if side is Side.LEFT else Side.LEFT


def place_near_vertex(root: Sequence[Point], host: PolygonStar, target: PolygonStar,
                      v: Point, direction: Point, side: Side, piece: int = -1,
                      max_j: int = 64) -> TowerPair:
    """Pair just inside ``host`` next to vertex v, aimed along ``direction``.

    The towers start at v + eps * w where w points into the host along the
    bisector of its angle at v.
    """
    pts = host.points
    n = host.n
    if v not in pts:
        raise TowerError("vertex is not a corner of the host piece")
    i = pts.index(v)
    u1 = pts[(i + 1) % n] - v
    u2 = pts[i - 1] - v
    w = u1.scale(1 / (abs(u1.x) + abs(u1.y))) + u2.scale(1 / (abs(u2.x) + abs(u2.y)))
    if w.x == 0 and w.y == 0:
        w = Point(-u1.y, u1.x)
    if orient(pts[i - 1], v, pts[(i + 1) % n]) < 0:
        w = Point(-w.x, -w.y)
    if direction.x == 0 and direction.y == 0:
        raise TowerError("zero direction for a near-vertex pair")
    dl = max(abs(direction.x), abs(direction.y))
    return _place_offset(root, host, target, v, w, direction.scale(Fraction(1) / dl),
                         side, piece, max_j, step_scale=True)


def place_exterior(root: Sequence[Point], host: PolygonStar, target: PolygonStar,
                   anchor: GuardAnchor, max_j: int = 64) -> TowerPair:
    """Pair parallel to the anchor's support line, moved just across it into ``host``.

    Starts from the midpoint of the support segment so the pair stays
    alongside it; the target keeps lying on the responsible side of the
    moved line because the move goes away from the target.
    """
    from .partition.algorithm import _outward_normal

    a, b = anchor.segment
    mid = Point((a.x + b.x) / 2, (a.y + b.y) / 2)
    return _place_offset(root, host, target, mid, _outward_normal(anchor), b - mid,
                         anchor.side, anchor.piece, max_j)


def _place_offset(root, host, target, base, w, direction, side, piece, max_j, step_scale=False):
    """Shrink eps = 1/3^j until the shifted pair is inside ``host`` and sees ``target``."""
    root = root.points if isinstance(root, PolygonStar) else tuple(root)
    hp = host.points
    for j in range(1, max_j + 1):
        eps = Fraction(1, 3 ** j)
        a = base + w.scale(eps)
        b = a + (direction.scale(eps) if step_scale else direction)
        s = choose_s(_len2(a, b))
        pair = _oriented_pair(a, b, s, side, piece)
        _, t2 = pair.towers()
        q2 = Point(Fraction(t2.x), Fraction(t2.y))
        if locate_point(hp, a) != 1 or locate_point(hp, q2) != 1:
            continue
        if all(segment_inside(root, q, x) for q in (a, q2) for x in target.points):
            return pair
    raise TowerError(f"no eps = 1/3^j with j <= {max_j} keeps the shifted pair valid")


def place_triple(piece: PolygonStar, k: Optional[Kernel] = None) -> TowerTriple:
    """Three non-collinear rational points strictly inside a full-dimensional kernel."""
    if k is None:
        k = kernel(piece)
    if k.kind is not KernelKind.FULL_DIM:
        raise TowerError(f"a triple needs a full-dimensional kernel, got {k.kind.value}")
    reg = list(k.region)
    start = min(range(len(reg)), key=lambda i: (reg[i].y, reg[i].x))
    reg = reg[start:] + reg[:start]
    m = len(reg)
    cx = sum(p.x for p in reg) / m
    cy = sum(p.y for p in reg) / m
    c = Point(cx, cy)
    chosen = (reg[0], reg[1], reg[-1])
    pts = tuple(Point((c.x + p.x) / 2, (c.y + p.y) / 2) for p in chosen)
    if orient(*pts) == 0:
        raise TowerError("kernel triple came out collinear")
    return TowerTriple(pts, piece)


@dataclass
class TowerPlan:
    """Everything emit_towers produced, plus warnings."""

    groups: list
    towers: list
    budget: int
    warnings: list


def emit_towers(pr: PartitionResult) -> TowerPlan:
    """Towers for every piece; hard failure if the total exceeds floor(2n/3)."""
    n = pr.polygon.n
    budget = 2 * n // 3
    groups = []
    warnings = []
    served = set()
    for anchor in pr.anchors:
        if anchor.kind is PlacementKind.NEAR_VERTEX_EXTERIOR:
            try:
                groups.append(place_exterior(pr.polygon, pr.pieces[anchor.neighbor],
                                             pr.pieces[anchor.piece], anchor))
            except TowerError as exc:
                warnings.append(f"piece {anchor.piece}: {exc}; pair left on its shared line")
                groups.append(place_pair(anchor))
        else:
            groups.append(place_pair(anchor))
        served.add(anchor.piece)
    for pid, piece in enumerate(pr.pieces):
        if pid in served:
            continue
        warnings.append(f"piece {pid} has no anchor; placing a triple")
        log.warning("piece %d has no anchor; placing a triple", pid)
        groups.append(place_triple(piece))
    towers = [t for g in groups for t in g.towers()]
    if len(towers) > budget:
        dump = "\n".join(f"  {e.depth} {e.label} n={e.n} sizes={e.sizes}" for e in pr.trace)
        raise TowerBudgetExceeded(f"{len(towers)} towers exceed floor(2n/3) = {budget}\n{dump}")
    return TowerPlan(groups, towers, budget, warnings)
