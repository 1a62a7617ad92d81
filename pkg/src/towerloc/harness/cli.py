"""Command line entry point: towerloc <subcommand> ..."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..localization import LocalizationError, LocalizationQuery, localize
from ..partition import PartitionError, partition
from ..polygon import PolygonError
from ..towers import TowerBudgetExceeded, emit_towers
from . import generators, io
from .render import render_svg

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load(args):
    if not args.inp:
        raise io.InputError("--in is required")
    try:
        return io.read_polygon(args.inp)
    except OSError as exc:
        raise io.InputError(str(exc)) from None


def _partition_dict(pr) -> dict:
    return {
        "n": pr.n,
        "pieces": [[[io._q(v.x), io._q(v.y)] for v in piece.points] for piece in pr.pieces],
        "labels": list(pr.leaf_labels),
        "anchors": [
            {"piece": a.piece, "kind": a.kind.value, "side": a.side.value,
             "segment": [[io._q(p.x), io._q(p.y)] for p in a.segment]}
            for a in pr.anchors
        ],
    }


def cmd_partition(args) -> int:
    p = _load(args)
    pr = partition(p)
    _emit(json.dumps(_partition_dict(pr), indent=1), args.out)
    if args.svg:
        render_svg(p, pr, (), args.svg)
    return EXIT_OK


def cmd_towers(args) -> int:
    p = _load(args)
    pr = partition(p)
    plan = emit_towers(pr)
    for w in plan.warnings:
        print(f"warning: {w}", file=sys.stderr)
    _emit(io.dumps_towers(plan.towers), args.out)
    if args.svg:
        render_svg(p, pr, plan.towers, args.svg)
    return EXIT_OK


def cmd_localize(args) -> int:
    """Query file: {"towers": [[x, y] or tower objects], "distances": [...]}."""
    if not args.inp:
        raise io.InputError("--in is required")
    try:
        d = json.loads(Path(args.inp).read_text())
        towers = [(float(t["x"]), float(t["y"])) if isinstance(t, dict) else (float(t[0]), float(t[1]))
                  for t in d["towers"]]
        q = LocalizationQuery(towers, d["distances"])
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise io.InputError(f"malformed query: {exc}") from None
    try:
        fix = localize(q, tol=args.tol) if args.tol else localize(q)
    except LocalizationError as exc:
        _emit(json.dumps({"error": type(exc).__name__, "message": str(exc)}), args.out)
        return EXIT_FAIL
    _emit(json.dumps({"x": repr(fix.point[0]), "y": repr(fix.point[1]),
                      "method": fix.method.value, "residual": fix.residual}), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .oracle import verify

    p = _load(args)
    kw = {"tol": args.tol} if args.tol else {}
    rep = verify(p, samples=args.samples, seed=args.seed, **kw)
    print(rep.summary())
    for note in rep.notes:
        print(f"  note: {note}")
    for f in rep.failures[:20]:
        print(f"  failure at {f.point}: {f.diagnosis}")
    if args.out:
        Path(args.out).write_text(json.dumps({
            "name": rep.name, "n": rep.n, "towers": rep.tower_count, "bound": rep.bound,
            "samples": rep.samples, "verdict": rep.verdict, "max_error": rep.max_error,
            "failures": [{"point": list(f.point), "diagnosis": f.diagnosis} for f in rep.failures],
            "star_shaped": rep.star_shaped, "wall_time": rep.wall_time,
        }, indent=1) + "\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_gen(args) -> int:
    kind = args.family
    if kind == "comb":
        p = generators.gen_comb(args.k, args.q)
    elif kind == "toth":
        p = generators.gen_toth_counterexample(args.s)
    elif kind == "random":
        p = generators.gen_random_simple(args.n, args.seed)
    elif kind == "fig13":
        p = generators.fig13_fixture()
    else:
        p = generators.gen_leaf_fixture(args.k, args.seed or 1)
    _emit(io.dumps_polygon(p), args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    p = _load(args)
    pr = towers = None
    if not args.outline:
        pr = partition(p)
        towers = emit_towers(pr).towers
    text = render_svg(p, pr, towers or (), None)
    _emit(text, args.svg or args.out)
    return EXIT_OK


def cmd_check_boundary_guards(args) -> int:
    from .guards import search_boundary_guard

    p = _load(args) if args.inp else generators.fig13_fixture()
    verts = [(v.x, v.y) for v in p.vertices]
    target = verts[:5]
    res = search_boundary_guard(verts, target, per_edge=args.per_edge, orientations=args.orientations)
    print(f"boundary positions={res.positions} orientations={res.orientations} "
          f"test points={res.test_points} best coverage={res.best_covered}/{res.test_points}")
    if res.covered:
        print(f"covered by guard at {res.best_guard} facing {res.best_normal}")
        return EXIT_FAIL
    print("no single boundary 180-degree guard covers v1..v5 at this resolution")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="towerloc", description="Star partitions, tower placement "
                                 "and two-tower localization in simple polygons.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, svg=False):
        sp.add_argument("--in", dest="inp", help="input JSON file")
        sp.add_argument("--out", help="output file (default stdout)")
        if svg:
            sp.add_argument("--svg", help="also write an SVG drawing here")
        return sp

    common(sub.add_parser("partition", help="star-shaped partition of a polygon"), svg=True) \
        .set_defaults(func=cmd_partition)
    common(sub.add_parser("towers", help="emit the tower list"), svg=True).set_defaults(func=cmd_towers)
    sp = common(sub.add_parser("localize", help="position fix from towers and distances"))
    sp.add_argument("--tol", type=float, default=None)
    sp.set_defaults(func=cmd_localize)
    sp = common(sub.add_parser("verify", help="end-to-end check against the visibility oracle"))
    sp.add_argument("--samples", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=None, help="error limit as a fraction of the diameter")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="generate a polygon")
    sp.add_argument("family", choices=["comb", "toth", "random", "fig13", "leaves"])
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--q", type=int, default=0)
    sp.add_argument("--s", type=int, default=3)
    sp.add_argument("--n", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = common(sub.add_parser("render", help="SVG drawing of a polygon and its partition"), svg=True)
    sp.add_argument("--outline", action="store_true", help="outline only, no partition")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("check-boundary-guards", help="discretized single boundary guard search")
    sp.add_argument("--in", dest="inp")
    sp.add_argument("--per-edge", type=int, default=200)
    sp.add_argument("--orientations", type=int, default=360)
    sp.set_defaults(func=cmd_check_boundary_guards)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (io.InputError, PolygonError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PartitionError, TowerBudgetExceeded) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
