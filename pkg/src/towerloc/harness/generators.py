"""Polygon generators for the test corpus and the named fixtures."""
from __future__ import annotations

import math
import random
from fractions import Fraction as F

from ..polygon import PolygonError, SimplePolygon, simplify, triangulate, dual_graph, validate_simple_polygon


def _cap(x, a, c):
    """Concave cap y = -a (x - c)^2 used to keep spike bases in general position."""
    return -a * (x - c) ** 2


def gen_comb(k: int, q: int = 0) -> SimplePolygon:
    """Comb with k thin spikes and n = 3k + q vertices.

    Spike bases sit on a shallow concave cap so the closing edge stays below
    them; q extra vertices bend the sides of the first spike outward.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if q not in (0, 1, 2):
        raise ValueError("q must be 0, 1 or 2")
    gap, width, height = F(3), F(1), F(10)
    span = gap * (k - 1) + width
    a = F(1, 4) / max(span * span / 4, F(1))
    c = span / 2
    spikes = []
    for i in range(k):
        x0 = gap * i
        left = (x0, _cap(x0, a, c))
        right = (x0 + width, _cap(x0 + width, a, c))
        tip = (x0 + width / 2 + F((i + 1) ** 2, 997), height + F((i + 1) ** 2, 89))
        spikes.append((left, tip, right))
    # CCW: closing edge left to right, then spikes from right to left
    verts = []
    for i in reversed(range(k)):
        left, tip, right = spikes[i]
        if i == 0 and q == 2:
            verts += [right, _bulge(right, tip, F(1, 5)), tip]
        else:
            verts += [right, tip]
        if i == 0 and q >= 1:
            verts.append(_bulge(tip, left, F(1, 5)))
        verts.append(left)
    return validate_simple_polygon(verts, name=f"comb-k{k}-q{q}")


def _bulge(a, b, off):
    """Midpoint of ab pushed by ``off`` to the right of a->b (outward for a CCW boundary)."""
    mx, my = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
    dx, dy = b[0] - a[0], b[1] - a[1]
    scale = off / max(abs(dx), abs(dy))
    return (mx + dy * scale, my - dx * scale)


def gen_toth_counterexample(s: int) -> SimplePolygon:
    """Row of s double-spikes over a two-vertex floor, n = 5s + 2."""
    if s < 1:
        raise ValueError("s must be at least 1")
    gap, width, height = F(4), F(2), F(10)
    span = gap * (s - 1) + width
    a = F(1, 4) / max(span * span / 4, F(1))
    c = span / 2
    verts = [(F(-1), F(-3)), (span + 1, F(-3) + F(1, 7))]
    for i in reversed(range(s)):
        x0 = gap * i
        left = (x0, _cap(x0, a, c))
        right = (x0 + width, _cap(x0 + width, a, c))
        t2 = (x0 + F(3, 2) + F((i + 1) ** 2, 997), height + F((i + 1) ** 2, 89))
        notch = (x0 + 1 + F((i + 1) ** 2, 1013), height / 3 + F((i + 1) ** 2, 101))
        t1 = (x0 + F(1, 2) - F((i + 1) ** 2, 1031), height - F((i + 1) ** 2, 83))
        verts += [right, t2, notch, t1, left]
    return validate_simple_polygon(verts, name=f"toth-s{s}")


FIG13_VERTICES = (
    (F(4), F(0)), (F(5), F(4)), (F(2), F(3, 2)), (F(-1), F(4)), (F(0), F(0)),
    (F(-19, 4), F(-6)), (F(-11, 4), F(-7, 2)), (F(23, 4), F(-6)),
)


def fig13_fixture() -> SimplePolygon:
    """Non-star 8-gon that splits into v1..v5 and v1 v5..v8 along v1v5.

    The first five vertices form a two-horned pentagon that no single
    boundary half-plane guard covers.
    """
    return validate_simple_polygon(FIG13_VERTICES, name="fig13")


def gen_random_simple(n: int, seed: int, grid: int = 4096) -> SimplePolygon:
    """Random simple polygon by recursive space partitioning.

    Points are drawn on an integer grid scaled to rationals; sets with
    collinear triples or a non-simple result are redrawn.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    rng = random.Random(seed)
    while True:
        pts = set()
        while len(pts) < n:
            pts.add((rng.randrange(grid), rng.randrange(grid)))
        pts = sorted(pts)
        rng.shuffle(pts)
        if _has_collinear(pts):
            continue
        ring = _space_partition(pts, rng)
        verts = [(F(x, grid), F(y, grid)) for x, y in ring]
        try:
            return validate_simple_polygon(verts, name=f"random-n{n}-s{seed}")
        except PolygonError:
            continue


def _has_collinear(pts) -> bool:
    n = len(pts)
    for i in range(n):
        xi, yi = pts[i]
        seen = set()
        for j in range(n):
            if j == i:
                continue
            dx, dy = pts[j][0] - xi, pts[j][1] - yi
            g = math.gcd(dx, dy)
            dx, dy = dx // g, dy // g
            if dx < 0 or (dx == 0 and dy < 0):
                dx, dy = -dx, -dy
            if (dx, dy) in seen:
                return True
            seen.add((dx, dy))
    return False


def _side(a, b, p) -> int:
    v = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    return (v > 0) - (v < 0)


def _space_partition(pts, rng):
    a, b = pts[0], pts[1]
    rest = pts[2:]
    up = [p for p in rest if _side(a, b, p) > 0]
    down = [p for p in rest if _side(a, b, p) < 0]
    lower = _chain(a, b, down, rng)
    upper = _chain(b, a, up, rng)
    return lower[:-1] + upper[:-1]


def _chain(a, b, pts, rng):
    """Polyline from a to b through every point of ``pts``, without crossings.

    All of ``pts`` lie on one side of ab.  A random pivot c and a random line
    through c that crosses ab split the rest into the a-part and the b-part.
    """
    if not pts:
        return [a, b]
    c = pts[rng.randrange(len(pts))]
    others = [p for p in pts if p != c]
    t = F(rng.randrange(1, 1024), 1024)
    m = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
    sa = _side(c, m, a)
    left = [p for p in others if _side(c, m, p) == sa]
    right = [p for p in others if _side(c, m, p) != sa]
    return _chain(a, c, left, rng)[:-1] + _chain(c, b, right, rng)


def gen_leaf_fixture(k: int, seed: int = 1) -> SimplePolygon:
    """Pinwheel (3k+2)-gon without a good diagonal whose dual tree has k+1 leaves.

    Bases of the k+1 spikes all have indices divisible by 3; k spikes carry
    two tips and the last carries one, so every base-to-base diagonal splits
    off sizes 3a+1 and 3b+3.  Twisted thin spikes hide the tips from the other
    bases.  The search is deterministic in ``seed``.
    """
    from ..partition.dissection import iter_good_diagonals

    if k < 2:
        raise ValueError("k must be at least 2")
    rng = random.Random(seed)
    m = k + 1

    def q(x):
        return F(round(x * 64), 64)

    for _ in range(100000):
        rot = [rng.uniform(0.2, 1.4) for _ in range(m)]
        rad = [rng.uniform(2, 6) for _ in range(m)]
        wid = [rng.uniform(0.02, 0.3) for _ in range(m)]
        jit = [rng.uniform(-0.3, 0.3) for _ in range(m)]
        verts = []
        for i in range(m):
            th = 2 * math.pi * i / m + jit[i]
            verts.append((q(math.cos(th)), q(math.sin(th))))
            th2 = 2 * math.pi * (i + 1) / m + jit[(i + 1) % m]
            mid = (th + th2) / 2 + rot[i]
            if i == m - 1:
                verts.append((q(rad[i] * math.cos(mid)), q(rad[i] * math.sin(mid))))
                continue
            for t in range(2):
                ang = mid + (t - 0.5) * wid[i]
                r = rad[i] * (1 if t == 0 else rng.uniform(0.5, 1.0))
                verts.append((q(r * math.cos(ang)), q(r * math.sin(ang))))
        try:
            poly = validate_simple_polygon(verts, name=f"leaves-k{k}")
        except PolygonError:
            continue
        star = simplify(poly.to_star())
        if star.n != 3 * k + 2:
            continue
        if next(iter_good_diagonals(star, max_interior=star.n), None) is not None:
            continue
        if len(dual_graph(triangulate(star)).leaves()) != k + 1:
            continue
        return poly
    raise RuntimeError(f"no leaf fixture found for k={k}")


def corpus(random_count: int = 200, seed: int = 0):
    """The standard corpus: combs, double-spike family, fig13 and random polygons."""
    out = []
    for k in range(1, 11):
        for q in (0, 1, 2):
            out.append(gen_comb(k, q))
    for s in range(1, 6):
        out.append(gen_toth_counterexample(s))
    out.append(fig13_fixture())
    rng = random.Random(seed)
    for i in range(random_count):
        n = rng.randint(6, 60)
        out.append(gen_random_simple(n, seed=1000 + i))
    return out
