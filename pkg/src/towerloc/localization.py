"""Recover an agent's position from visible tower coordinates and distances.

Nothing here looks at the polygon.  With three or more towers in general
position the fix is the point agreeing with every distance.  With two towers
(or when all visible towers are collinear) the two circle intersections are
mirror images across the tower line and the parity of the towers' encoded
separation picks the side: even numerator means left of the line directed
from the lexicographically smaller tower to the larger one.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .geom import Circle, FloatPoint, circle_circle_intersection


class LocalizationError(ValueError):
    pass


class NoCodeword(LocalizationError):
    pass


class Ambiguous(LocalizationError):
    pass


class InsufficientTowers(LocalizationError):
    pass


class InconsistentDistances(LocalizationError):
    pass


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class Codeword:
    m: int
    s: int
    parity: Parity


class Method(enum.Enum):
    THREE_CIRCLE = "three_circle"
    TWO_CIRCLE_PARITY_LEFT = "two_circle_parity_left"
    TWO_CIRCLE_PARITY_RIGHT = "two_circle_parity_right"


@dataclass(frozen=True)
class LocalizationQuery:
    towers: tuple
    distances: tuple

    def __init__(self, towers, distances):
        towers = tuple(FloatPoint(float(t[0]), float(t[1])) for t in towers)
        distances = tuple(float(d) for d in distances)
        if len(towers) != len(distances):
            raise ValueError(f"{len(towers)} towers but {len(distances)} distances")
        for d in distances:
            if not math.isfinite(d) or d < 0:
                raise ValueError(f"distance must be finite and non-negative, got {d}")
        for t in towers:
            if not (math.isfinite(t[0]) and math.isfinite(t[1])):
                raise ValueError(f"tower coordinates must be finite, got {t}")
        object.__setattr__(self, "towers", towers)
        object.__setattr__(self, "distances", distances)

    def __len__(self):
        return len(self.towers)


@dataclass(frozen=True)
class Fix:
    point: FloatPoint
    method: Method
    residual: float
    rejected: FloatPoint | None = None


DEFAULT_MAX_S = 40
DEFAULT_DECODE_TOL = 1e-6
DEFAULT_TOL = 1e-8


def decode_parity(distance: float, max_s: int = DEFAULT_MAX_S,
                  tol: float = DEFAULT_DECODE_TOL) -> Codeword:
    """Find the unique m/3^(s+1) (m in {1, 2}) within relative ``tol`` of ``distance``."""
    if not distance > 0:
        raise ValueError(f"distance must be positive, got {distance}")
    hits = []
    for e in range(1, max_s + 1):
        for m in (1, 2):
            code = m / 3.0 ** e
            if abs(distance - code) <= tol * code:
                hits.append((m, e - 1))
    if not hits:
        raise NoCodeword(f"{distance!r} is not m/3^(s+1) for any m in (1, 2), s+1 <= {max_s}")
    if len(hits) > 1:
        raise Ambiguous(f"{distance!r} matches several codewords {hits}; tolerance too loose")
    m, s = hits[0]
    return Codeword(m, s, Parity.EVEN if m == 2 else Parity.ODD)


def _dist(a, b) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def _residual(p, towers, dists) -> float:
    return max(abs(_dist(p, t) - d) for t, d in zip(towers, dists))


def _scale(towers, dists) -> float:
    s = 1.0
    for t in towers:
        s = max(s, abs(t[0]), abs(t[1]))
    for d in dists:
        s = max(s, d)
    return s


def _refine(p, towers, dists, iters: int = 8):
    """Gauss-Newton on the range equations, keeping the best iterate."""
    x, y = p
    best = (x, y)
    best_r = _residual(best, towers, dists)
    for _ in range(iters):
        jtj00 = jtj01 = jtj11 = g0 = g1 = 0.0
        for (tx, ty), d in zip(towers, dists):
            dx, dy = x - tx, y - ty
            r = math.hypot(dx, dy)
            if r == 0.0:
                continue
            ux, uy = dx / r, dy / r
            e = r - d
            jtj00 += ux * ux
            jtj01 += ux * uy
            jtj11 += uy * uy
            g0 += ux * e
            g1 += uy * e
        det = jtj00 * jtj11 - jtj01 * jtj01
        if abs(det) < 1e-300:
            break
        sx = (jtj11 * g0 - jtj01 * g1) / det
        sy = (jtj00 * g1 - jtj01 * g0) / det
        x, y = x - sx, y - sy
        r = _residual((x, y), towers, dists)
        if r < best_r:
            best, best_r = (x, y), r
        if abs(sx) + abs(sy) <= 1e-17 * (abs(x) + abs(y) + 1.0):
            break
    return FloatPoint(*best), best_r


def _two_circle(ta, da, tb, db, tol: float, scale: float):
    """Parity fix from one tower pair; returns (point, method, rejected)."""
    sep = _dist(ta, tb)
    code = decode_parity(sep)
    (t1, d1), (t2, d2) = sorted([(ta, da), (tb, db)], key=lambda x: (x[0][0], x[0][1]))
    pts = circle_circle_intersection(Circle(t1, d1), Circle(t2, d2), tol=tol)
    if not pts:
        raise InconsistentDistances("tower circles do not meet")
    even = code.parity is Parity.EVEN
    method = Method.TWO_CIRCLE_PARITY_LEFT if even else Method.TWO_CIRCLE_PARITY_RIGHT
    if len(pts) == 1:
        return pts[0], method, pts[0]
    left, right = pts
    return (left, method, right) if even else (right, method, left)


def localize(q: LocalizationQuery, tol: float = DEFAULT_TOL) -> Fix:
    """Position fix from a LocalizationQuery; ``tol`` is relative to the input scale."""
    towers, dists = q.towers, q.distances
    ell = len(towers)
    if ell < 2:
        raise InsufficientTowers(f"need at least two towers, got {ell}")
    scale = _scale(towers, dists)
    band = tol * scale
    if ell == 2:
        p, method, rej = _two_circle(towers[0], dists[0], towers[1], dists[1], tol, scale)
        return Fix(p, method, _residual(p, towers, dists), rej)

    collinear = _collinear(towers, band)
    if not collinear:
        p0 = _linear_start(towers, dists)
        if p0 is not None:
            p, r = _refine(p0, towers, dists)
            if r <= band:
                return Fix(p, Method.THREE_CIRCLE, r)
        # slow path: consensus over pairwise circle intersections
        cands = []
        for i in range(ell):
            for j in range(i + 1, ell):
                if _dist(towers[i], towers[j]) <= band:
                    continue
                try:
                    pts = circle_circle_intersection(Circle(towers[i], dists[i]),
                                                     Circle(towers[j], dists[j]), tol=1e-6)
                except ValueError:
                    continue
                for p in pts:
                    cands.append(_refine(p, towers, dists))
        good = sorted((c for c in cands if c[1] <= band), key=lambda c: c[1])
        clusters = []
        for p, r in good:
            if not any(_dist(p, c[0]) <= 1e3 * band for c in clusters):
                clusters.append((p, r))
        if len(clusters) == 1:
            p, r = clusters[0]
            return Fix(p, Method.THREE_CIRCLE, r)
        if not clusters:
            raise InconsistentDistances("no candidate agrees with every distance")

    # mirror ambiguity (collinear towers): settle it with a decodable pair
    order = sorted(((i, j) for i in range(ell) for j in range(i + 1, ell)),
                   key=lambda ij: _dist(towers[ij[0]], towers[ij[1]]))
    for i, j in order:
        if _dist(towers[i], towers[j]) <= band:
            continue
        try:
            p, method, rej = _two_circle(towers[i], dists[i], towers[j], dists[j], tol, scale)
        except LocalizationError:
            continue
        p, r = _refine(p, towers, dists)
        if r <= band:
            return Fix(p, method, r, rej)
    raise InconsistentDistances("no decodable tower pair yields a consistent fix")


def _linear_start(towers, dists):
    """Least-squares solution of the range equations differenced against tower 0."""
    (x0, y0), d0 = towers[0], dists[0]
    a00 = a01 = a11 = b0 = b1 = 0.0
    for (x, y), d in zip(towers[1:], dists[1:]):
        ax, ay = 2.0 * (x - x0), 2.0 * (y - y0)
        rhs = (x - x0) * (x + x0) + (y - y0) * (y + y0) - (d - d0) * (d + d0)
        a00 += ax * ax
        a01 += ax * ay
        a11 += ay * ay
        b0 += ax * rhs
        b1 += ay * rhs
    det = a00 * a11 - a01 * a01
    if det == 0.0:
        return None
    return ((a11 * b0 - a01 * b1) / det, (a00 * b1 - a01 * b0) / det)


def _collinear(towers: Sequence[FloatPoint], band: float) -> bool:
    a = towers[0]
    b = max(towers, key=lambda t: _dist(a, t))
    L = _dist(a, b)
    if L == 0:
        return True
    for t in towers:
        off = abs((b[0] - a[0]) * (t[1] - a[1]) - (b[1] - a[1]) * (t[0] - a[0])) / L
        if off > band:
            return False
    return True
