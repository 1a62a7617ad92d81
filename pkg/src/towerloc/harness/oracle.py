"""Brute-force visibility oracle and end-to-end verification."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .. import _kernels
from ..geom import Point, locate_point, orient
from ..localization import LocalizationError, LocalizationQuery, decode_parity, localize
from ..partition import PartitionError, partition
from ..polygon import SimplePolygon
from ..towers import TowerBudgetExceeded, TowerPair, emit_towers
from ..visibility import kernel, kernel_boundary_segments

ERROR_FACTOR = 1e-9


def _hi_lo(tower):
    """Float coordinates plus the rounding remainder of the exact position.

    A tower whose broadcast floats no longer match its exact provenance (a
    tampered tower) is taken to stand where its floats say.
    """
    ex, ey = tower.decimal()
    lx = float(ex - Decimal(tower.x))
    ly = float(ey - Decimal(tower.y))
    if abs(lx) > 1e-12 * max(1.0, abs(tower.x)) or abs(ly) > 1e-12 * max(1.0, abs(tower.y)):
        return tower.x, tower.y, 0.0, 0.0
    return tower.x, tower.y, lx, ly


def _tower_arrays(towers):
    hl = np.array([_hi_lo(t) for t in towers], dtype=np.float64).reshape(-1, 4)
    return hl[:, 0], hl[:, 1], hl[:, 2], hl[:, 3]


def _distances(px, py, hx, hy, lx, ly):
    dx = (hx[None, :] - px[:, None]) + lx[None, :]
    dy = (hy[None, :] - py[:, None]) + ly[None, :]
    return np.hypot(dx, dy)


def _vertex_arrays(p):
    vx = np.array([v.fx for v in p.vertices], dtype=np.float64)
    vy = np.array([v.fy for v in p.vertices], dtype=np.float64)
    return vx, vy


def oracle_visible_towers(p: SimplePolygon, towers: Sequence, agent) -> LocalizationQuery:
    """Towers whose sight line to ``agent`` stays in P, with true distances."""
    ax, ay = (agent.fx, agent.fy) if isinstance(agent, Point) else (float(agent[0]), float(agent[1]))
    exact = agent if isinstance(agent, Point) else Point(Fraction(ax), Fraction(ay))
    if locate_point(p.vertices, exact) < 0:
        raise ValueError(f"agent {agent} lies outside the polygon")
    if not towers:
        return LocalizationQuery([], [])
    vx, vy = _vertex_arrays(p)
    hx, hy, lx, ly = _tower_arrays(towers)
    px, py = np.array([ax]), np.array([ay])
    vis = _kernels.visibility_matrix(px, py, hx, hy, vx, vy)[0]
    d = _distances(px, py, hx, hy, lx, ly)[0]
    idx = np.nonzero(vis)[0]
    return LocalizationQuery([(hx[i], hy[i]) for i in idx], [d[i] for i in idx])


def sample_interior(p: SimplePolygon, count: int, seed: int) -> np.ndarray:
    """Jittered stratified grid, filtered to the strict interior (exact near edges)."""
    vx, vy = _vertex_arrays(p)
    x0, x1, y0, y1 = vx.min(), vx.max(), vy.min(), vy.max()
    w, h = x1 - x0, y1 - y0
    area = abs(float(p.area2())) / 2
    rng = np.random.default_rng(seed)
    frac = max(area / (w * h), 1e-6)
    g = max(2, int(math.ceil(math.sqrt(count / frac) * 1.15)))
    while True:
        cols, rows = g, max(2, int(round(g * h / w))) if w >= h else g
        if w < h:
            rows, cols = g, max(2, int(round(g * w / h)))
        ii, jj = np.meshgrid(np.arange(cols), np.arange(rows), indexing="xy")
        ii, jj = ii.ravel(), jj.ravel()
        px = x0 + (ii + rng.random(ii.size)) * (w / cols)
        py = y0 + (jj + rng.random(jj.size)) * (h / rows)
        inside = _kernels.points_in_polygon(px, py, vx, vy)
        near = _near_boundary(px, py, vx, vy)
        for k in np.nonzero(near)[0]:
            inside[k] = locate_point(p.vertices, Point(Fraction(px[k]), Fraction(py[k]))) == 1
        px, py = px[inside], py[inside]
        if px.size >= count:
            keep = np.sort(rng.choice(px.size, size=count, replace=False))
            return np.column_stack([px[keep], py[keep]])
        g = int(g * 1.3) + 1


def _near_boundary(px, py, vx, vy, rel: float = 1e-9):
    scale = max(1.0, float(np.max(np.abs(vx))), float(np.max(np.abs(vy))))
    ax, ay = vx[None, :], vy[None, :]
    ex, ey = np.roll(vx, -1)[None, :] - ax, np.roll(vy, -1)[None, :] - ay
    qx, qy = px[:, None] - ax, py[:, None] - ay
    t = np.clip((qx * ex + qy * ey) / (ex * ex + ey * ey), 0.0, 1.0)
    d = np.hypot(qx - t * ex, qy - t * ey).min(axis=1)
    return d <= rel * scale


@dataclass
class Failure:
    point: tuple
    diagnosis: str

    def key(self):
        return (self.point, self.diagnosis)


@dataclass
class VerificationReport:
    name: str
    n: int
    tower_count: int
    bound: int
    samples: int
    failures: list = field(default_factory=list)
    star_shaped: list = field(default_factory=list)
    anchors_sound: bool = True
    wall_time: float = 0.0
    max_error: float = 0.0
    diameter: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (not self.failures and self.tower_count <= self.bound
                and all(self.star_shaped) and self.anchors_sound)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def summary(self) -> str:
        return (f"{self.verdict} {self.name}: n={self.n} towers={self.tower_count}/{self.bound} "
                f"samples={self.samples} failures={len(self.failures)} "
                f"max_err={self.max_error:.3g} time={self.wall_time:.2f}s")


def _diameter(p: SimplePolygon) -> float:
    vx, vy = _vertex_arrays(p)
    d = np.hypot(vx[:, None] - vx[None, :], vy[:, None] - vy[None, :])
    return float(d.max())


def check_anchor(piece, anchor, pair: Optional[TowerPair] = None) -> Optional[str]:
    """None when the anchor is sound, otherwise a diagnosis."""
    a, b = anchor.segment
    k = kernel(piece)
    if k.empty:
        return "piece has an empty kernel"
    if not (k.contains(a) and k.contains(b)):
        return "anchor segment leaves the kernel"
    segs = kernel_boundary_segments(piece, k)
    if not any(orient(s, e, a) == 0 and orient(s, e, b) == 0 and _within(s, e, a) and _within(s, e, b)
               for _, s, e in segs):
        return "anchor segment is not on a kernel boundary segment"
    want = 1 if anchor.side.value == "L" else -1
    for v in piece.points:
        if orient(a, b, v) == -want:
            return "piece crosses the anchor's responsible side"
    if pair is not None:
        t1, t2 = pair.towers()
        lo_first = (t1.x, t1.y) < (t2.x, t2.y)
        pa, pb = pair.anchor_a, pair.anchor_b
        u, w = (pa, pb) if lo_first else (pb, pa)
        want = 1 if pair.m == 2 else -1
        for v in piece.points:
            if orient(u, w, v) == -want:
                return "tower parity points at the wrong side"
    return None


def audit_broadcast_pairs(pieces, towers) -> list:
    """Diagnoses for tower pairs whose broadcast floats break the parity code.

    For each piece served by a pair, the float separation must decode to a
    codeword, and the decoded side of the line from the lexicographically
    smaller tower must contain every vertex of the piece.  A moved tower can
    go unnoticed by round trips wherever other towers are visible, so this
    checks the list itself.
    """
    groups = {}
    for t in towers:
        if t.m in (1, 2) and t.which in (1, 2):
            groups.setdefault(t.piece, {})[t.which] = t
    out = []
    for piece_id, g in sorted(groups.items()):
        if set(g) != {1, 2}:
            out.append(f"piece {piece_id}: tower pair is incomplete")
            continue
        if not 0 <= piece_id < len(pieces):
            out.append(f"piece {piece_id}: no such piece")
            continue
        (ux, uy), (wx, wy) = sorted([(g[1].x, g[1].y), (g[2].x, g[2].y)])
        sep = math.hypot(wx - ux, wy - uy)
        if sep == 0.0:
            out.append(f"piece {piece_id}: towers coincide")
            continue
        try:
            code = decode_parity(sep)
        except (LocalizationError, ValueError) as exc:
            out.append(f"piece {piece_id}: separation {sep!r} does not decode ({type(exc).__name__})")
            continue
        want = 1.0 if code.m == 2 else -1.0
        pts = pieces[piece_id].points
        scale = max(1.0, max(max(abs(v.fx), abs(v.fy)) for v in pts))
        band = 1e-9 * scale * sep
        for v in pts:
            c = (wx - ux) * (v.fy - uy) - (wy - uy) * (v.fx - ux)
            if want * c < -band:
                out.append(f"piece {piece_id}: parity m={code.m} selects the side away from vertex "
                           f"({v.fx:.6g}, {v.fy:.6g})")
                break
    return out


def _within(s, e, q) -> bool:
    return min(s.x, e.x) <= q.x <= max(s.x, e.x) and min(s.y, e.y) <= q.y <= max(s.y, e.y)


def verify(p: SimplePolygon, samples: int = 10000, seed: int = 0, towers=None,
           tol: float = ERROR_FACTOR) -> VerificationReport:
    """Partition, place towers, then localize sampled interior points against the truth.

    ``towers`` overrides the emitted tower list, which is how negative
    controls inject tampered towers.
    """
    t0 = time.perf_counter()
    n = p.n
    bound = 2 * n // 3
    rep = VerificationReport(p.name, n, 0, bound, samples)
    rep.diameter = _diameter(p)
    try:
        pr = partition(p)
        plan = emit_towers(pr)
    except (PartitionError, TowerBudgetExceeded) as exc:
        rep.failures.append(Failure((), f"pipeline error: {exc}"))
        rep.wall_time = time.perf_counter() - t0
        return rep
    rep.notes.extend(plan.warnings)
    rep.star_shaped = [not kernel(q).empty for q in pr.pieces]
    pairs = {g.piece: g for g in plan.groups if isinstance(g, TowerPair)}
    for anchor in pr.anchors:
        why = check_anchor(pr.pieces[anchor.piece], anchor, pairs.get(anchor.piece))
        if why:
            rep.anchors_sound = False
            rep.notes.append(f"piece {anchor.piece}: {why}")
    if sum(q.area2() for q in pr.pieces) != p.area2():
        rep.anchors_sound = False
        rep.notes.append("piece areas do not add up to the polygon area")
    tw = list(plan.towers) if towers is None else list(towers)
    rep.tower_count = len(tw)
    for why in audit_broadcast_pairs(pr.pieces, tw):
        rep.failures.append(Failure((), f"tower audit: {why}"))

    pts = sample_interior(p, samples, seed)
    vx, vy = _vertex_arrays(p)
    hx, hy, lx, ly = _tower_arrays(tw)
    vis = _kernels.visibility_matrix(pts[:, 0], pts[:, 1], hx, hy, vx, vy)
    dist = _distances(pts[:, 0], pts[:, 1], hx, hy, lx, ly)
    limit = tol * rep.diameter
    worst = 0.0
    for i in range(pts.shape[0]):
        idx = np.nonzero(vis[i])[0]
        x, y = float(pts[i, 0]), float(pts[i, 1])
        q = LocalizationQuery([(hx[j], hy[j]) for j in idx], [dist[i, j] for j in idx])
        try:
            fix = localize(q)
        except LocalizationError as exc:
            rep.failures.append(Failure((x, y), f"{type(exc).__name__}: {exc} (sees {len(idx)})"))
            continue
        err = math.hypot(fix.point[0] - x, fix.point[1] - y)
        worst = max(worst, err)
        if not err <= limit:
            rep.failures.append(Failure((x, y), f"error {err:.3g} > {limit:.3g} via "
                                                f"{fix.method.value} (sees {len(idx)})"))
    rep.max_error = worst
    rep.failures.sort(key=Failure.key)
    rep.wall_time = time.perf_counter() - t0
    return rep
