"""Discretized search for a single boundary 180-degree guard covering a piece.

A 180-degree guard at g with inner normal u covers a point x when the segment
gx stays inside P and (x - g) . u >= 0.  The search tries guard positions
spaced along the boundary of P and a fan of normals at each, and reports the
best coverage it found over a fixed set of test points of the target piece.
This is a falsifiable check at one resolution, not a proof.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import _kernels


@dataclass
class GuardSearch:
    positions: int
    orientations: int
    test_points: int
    best_covered: int
    best_guard: tuple
    best_normal: tuple

    @property
    def covered(self) -> bool:
        return self.best_covered == self.test_points


def _piece_samples(piece_pts, per_axis: int):
    """Vertices, edge midpoints and an interior grid of the target piece."""
    vx = np.array([float(p[0]) for p in piece_pts])
    vy = np.array([float(p[1]) for p in piece_pts])
    xs = np.linspace(vx.min(), vx.max(), per_axis + 2)[1:-1]
    ys = np.linspace(vy.min(), vy.max(), per_axis + 2)[1:-1]
    gx, gy = np.meshgrid(xs, ys)
    gx, gy = gx.ravel(), gy.ravel()
    inside = _kernels.points_in_polygon(gx, gy, vx, vy)
    mx = (vx + np.roll(vx, -1)) / 2
    my = (vy + np.roll(vy, -1)) / 2
    # pull boundary points a hair inwards towards the vertex centroid
    cx, cy = vx.mean(), vy.mean()
    bx = np.concatenate([vx, mx])
    by = np.concatenate([vy, my])
    bx = bx + 1e-9 * (cx - bx)
    by = by + 1e-9 * (cy - by)
    return np.concatenate([bx, gx[inside]]), np.concatenate([by, gy[inside]])


def _boundary_positions(poly_pts, per_edge: int):
    out = []
    n = len(poly_pts)
    for i in range(n):
        ax, ay = (float(c) for c in poly_pts[i])
        bx, by = (float(c) for c in poly_pts[(i + 1) % n])
        for t in range(per_edge):
            f = t / per_edge
            out.append((ax + f * (bx - ax), ay + f * (by - ay)))
    return out


def search_boundary_guard(poly_pts, piece_pts, per_edge: int = 200, orientations: int = 360,
                          per_axis: int = 24) -> GuardSearch:
    """Best single boundary guard for the piece at the given resolution."""
    px, py = _piece_samples(piece_pts, per_axis)
    vx = np.array([float(p[0]) for p in poly_pts])
    vy = np.array([float(p[1]) for p in poly_pts])
    angles = np.arange(orientations) * (2 * math.pi / orientations)
    ux, uy = np.cos(angles), np.sin(angles)
    best = (-1, (0.0, 0.0), (1.0, 0.0))
    positions = _boundary_positions(poly_pts, per_edge)
    for gx, gy in positions:
        vis = _kernels.visibility_matrix(px, py, np.array([gx]), np.array([gy]), vx, vy, eps=1e-13)[:, 0]
        dx, dy = px - gx, py - gy
        proj = ux[:, None] * dx[None, :] + uy[:, None] * dy[None, :]
        cov = ((proj >= -1e-12) & vis[None, :]).sum(axis=1)
        k = int(np.argmax(cov))
        if cov[k] > best[0]:
            best = (int(cov[k]), (gx, gy), (float(ux[k]), float(uy[k])))
    return GuardSearch(len(positions), orientations, int(px.size), best[0], best[1], best[2])
