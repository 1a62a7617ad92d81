"""Compare the numba and numpy oracle kernels.

    python3 benchmarks/bench_kernels.py [--points 20000] [--repeat 3]

Prints best-of-repeat wall times for point-in-polygon and the visibility
matrix on a few corpus polygons, and checks that both backends agree.
"""
import argparse
import time

import numpy as np

from towerloc import _kernels
from towerloc.harness.generators import gen_comb, gen_random_simple, gen_toth_counterexample
from towerloc.harness.oracle import sample_interior
from towerloc.partition import partition
from towerloc.towers import emit_towers


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if _kernels.BACKEND != "numba":
        print("numba is not available; only the numpy kernels will run")
    polys = [gen_comb(10), gen_toth_counterexample(5), gen_random_simple(60, 1)]
    print(f"{'polygon':<22}{'n':>4}{'towers':>8}  {'kernel':<12}{'numpy s':>10}{'numba s':>10}{'speedup':>9}")
    for p in polys:
        towers = emit_towers(partition(p)).towers
        pts = sample_interior(p, args.points, 0)
        px, py = np.ascontiguousarray(pts[:, 0]), np.ascontiguousarray(pts[:, 1])
        vx = np.array([v.fx for v in p.vertices])
        vy = np.array([v.fy for v in p.vertices])
        tx = np.array([t.x for t in towers])
        ty = np.array([t.y for t in towers])
        cases = [
            ("inside", lambda: _kernels.numpy_points_in_polygon(px, py, vx, vy),
             lambda: _kernels.points_in_polygon(px, py, vx, vy)),
            ("visibility", lambda: _kernels.numpy_visibility_matrix(px, py, tx, ty, vx, vy),
             lambda: _kernels.visibility_matrix(px, py, tx, ty, vx, vy)),
        ]
        for label, ref, fast in cases:
            fast()  # compile outside the timing
            t_np, a = _best(ref, args.repeat)
            t_nb, b = _best(fast, args.repeat)
            if not np.array_equal(a, b):
                raise SystemExit(f"backends disagree on {p.name} {label}")
            print(f"{p.name:<22}{p.n:>4}{len(towers):>8}  {label:<12}{t_np:>10.4f}{t_nb:>10.4f}"
                  f"{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
