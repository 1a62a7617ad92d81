"""Float batch kernels for the verification oracle.

Two hot loops dominate verification: point-in-polygon over many sample
points, and the sample-by-tower visibility matrix.  Both come in a numba
version and a pure numpy version with identical semantics.  Setting the
environment variable TOWERLOC_NO_NUMBA=1 (or not having numba installed)
selects numpy.

Visibility is deliberately lenient: a sight line is blocked only by a proper
crossing with a polygon edge whose orientation tests clear a relative margin.
Grazing contacts count as visible.  Extra towers only add true distances, so
erring towards "visible" cannot make a correct localization fail.
"""
from __future__ import annotations

import os

import numpy as np

_EPS = 1e-12


def _numpy_points_in_polygon(px, py, vx, vy):
    px = np.asarray(px, dtype=np.float64)[:, None]
    py = np.asarray(py, dtype=np.float64)[:, None]
    ax, ay = vx[None, :], vy[None, :]
    bx, by = np.roll(vx, -1)[None, :], np.roll(vy, -1)[None, :]
    straddle = (ay > py) != (by > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        xint = ax + (py - ay) * (bx - ax) / (by - ay)
    hits = straddle & (px < xint)
    return (hits.sum(axis=1) % 2) == 1


def _numpy_visibility_matrix(px, py, tx, ty, vx, vy, eps=_EPS):
    px = np.asarray(px, dtype=np.float64)
    py = np.asarray(py, dtype=np.float64)
    ax, ay = vx[None, :], vy[None, :]
    bx, by = np.roll(vx, -1)[None, :], np.roll(vy, -1)[None, :]
    scale = max(1.0, float(np.max(np.abs(vx))), float(np.max(np.abs(vy))))
    tol = eps * scale * scale
    out = np.ones((px.shape[0], len(tx)), dtype=bool)
    P_x, P_y = px[:, None], py[:, None]
    for j in range(len(tx)):
        t_x, t_y = tx[j], ty[j]
        dx, dy = t_x - P_x, t_y - P_y
        o1 = dx * (ay - P_y) - dy * (ax - P_x)
        o2 = dx * (by - P_y) - dy * (bx - P_x)
        ex, ey = bx - ax, by - ay
        o3 = ex * (P_y - ay) - ey * (P_x - ax)
        o4 = ex * (t_y - ay) - ey * (t_x - ax)
        strict = ((o1 > tol) & (o2 < -tol)) | ((o1 < -tol) & (o2 > tol))
        strict &= ((o3 > tol) & (o4 < -tol)) | ((o3 < -tol) & (o4 > tol))
        out[:, j] = ~strict.any(axis=1)
    return out


try:
    if os.environ.get("TOWERLOC_NO_NUMBA", "") not in ("", "0"):
        raise ImportError("numba disabled by TOWERLOC_NO_NUMBA")
    from numba import config as _nb_config, njit, prange

    # the bundled TBB is often too old and numba warns on every process
    _nb_config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]
except ImportError:
    njit = None

if njit is not None:
    @njit(cache=True)
    def _nb_points_in_polygon(px, py, vx, vy):
        n = vx.shape[0]
        out = np.zeros(px.shape[0], dtype=np.bool_)
        for i in range(px.shape[0]):
            x, y = px[i], py[i]
            inside = False
            for k in range(n):
                ax, ay = vx[k], vy[k]
                bx, by = vx[(k + 1) % n], vy[(k + 1) % n]
                if (ay > y) != (by > y):
                    xint = ax + (y - ay) * (bx - ax) / (by - ay)
                    if x < xint:
                        inside = not inside
            out[i] = inside
        return out

    @njit(cache=True, parallel=True)
    def _nb_visibility_matrix(px, py, tx, ty, vx, vy, eps):
        n = vx.shape[0]
        scale = 1.0
        for k in range(n):
            scale = max(scale, abs(vx[k]), abs(vy[k]))
        tol = eps * scale * scale
        out = np.ones((px.shape[0], tx.shape[0]), dtype=np.bool_)
        for i in prange(px.shape[0]):
            x, y = px[i], py[i]
            for j in range(tx.shape[0]):
                dx, dy = tx[j] - x, ty[j] - y
                for k in range(n):
                    ax, ay = vx[k], vy[k]
                    bx, by = vx[(k + 1) % n], vy[(k + 1) % n]
                    o1 = dx * (ay - y) - dy * (ax - x)
                    o2 = dx * (by - y) - dy * (bx - x)
                    if not ((o1 > tol and o2 < -tol) or (o1 < -tol and o2 > tol)):
                        continue
                    ex, ey = bx - ax, by - ay
                    o3 = ex * (y - ay) - ey * (x - ax)
                    o4 = ex * (ty[j] - ay) - ey * (tx[j] - ax)
                    if (o3 > tol and o4 < -tol) or (o3 < -tol and o4 > tol):
                        out[i, j] = False
                        break
        return out

    BACKEND = "numba"
else:
    BACKEND = "numpy"


def points_in_polygon(px, py, vx, vy) -> np.ndarray:
    """Crossing-number containment for many points (boundary undefined)."""
    px, py = np.ascontiguousarray(px, np.float64), np.ascontiguousarray(py, np.float64)
    vx, vy = np.ascontiguousarray(vx, np.float64), np.ascontiguousarray(vy, np.float64)
    if BACKEND == "numba":
        return _nb_points_in_polygon(px, py, vx, vy)
    return _numpy_points_in_polygon(px, py, vx, vy)


def visibility_matrix(px, py, tx, ty, vx, vy, eps: float = _EPS) -> np.ndarray:
    """Boolean [points, towers] matrix: True unless an edge properly blocks the sight line."""
    px, py = np.ascontiguousarray(px, np.float64), np.ascontiguousarray(py, np.float64)
    tx, ty = np.ascontiguousarray(tx, np.float64), np.ascontiguousarray(ty, np.float64)
    vx, vy = np.ascontiguousarray(vx, np.float64), np.ascontiguousarray(vy, np.float64)
    if BACKEND == "numba":
        return _nb_visibility_matrix(px, py, tx, ty, vx, vy, eps)
    return _numpy_visibility_matrix(px, py, tx, ty, vx, vy, eps)


numpy_points_in_polygon = _numpy_points_in_polygon
numpy_visibility_matrix = _numpy_visibility_matrix
