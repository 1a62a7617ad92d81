"""JSON polygon and tower formats.

Polygon: {"name": str, "vertices": [["p/q", "p/q"], ...], "orientation": "ccw"}.
Plain decimal strings are accepted too and parsed exactly.  Towers: a list
of {"x", "y", "exact": {...}, "piece", "side"}; x and y are decimal strings
with 30 significant figures.
"""
from __future__ import annotations

import json
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from ..geom import Point, as_rational
from ..polygon import SimplePolygon, validate_simple_polygon
from ..towers import PlacedTower
from ..partition.algorithm import Side


class InputError(ValueError):
    pass


def _q(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def polygon_to_dict(p: SimplePolygon) -> dict:
    return {
        "name": p.name,
        "orientation": "ccw",
        "vertices": [[_q(v.x), _q(v.y)] for v in p.vertices],
    }


def polygon_from_dict(d: dict) -> SimplePolygon:
    try:
        verts = [(as_rational(str(x)), as_rational(str(y))) for x, y in d["vertices"]]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed polygon: {exc}") from None
    return validate_simple_polygon(verts, name=d.get("name", ""))


def dumps_polygon(p: SimplePolygon) -> str:
    return json.dumps(polygon_to_dict(p), indent=1)


def loads_polygon(text: str) -> SimplePolygon:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    return polygon_from_dict(d)


def read_polygon(path) -> SimplePolygon:
    return loads_polygon(Path(path).read_text())


def write_polygon(p: SimplePolygon, path) -> None:
    Path(path).write_text(dumps_polygon(p) + "\n")


def _sig30(x: Decimal) -> str:
    with localcontext() as ctx:
        ctx.prec = 30
        return format(+x, "f") if x == 0 else format(+x, ".29e")


def tower_to_dict(t: PlacedTower) -> dict:
    ex, ey = t.decimal()
    return {
        "x": _sig30(ex),
        "y": _sig30(ey),
        "exact": {
            "ax": _q(t.anchor_a.x), "ay": _q(t.anchor_a.y),
            "bx": _q(t.anchor_b.x), "by": _q(t.anchor_b.y),
            "m": t.m, "s": t.s, "tower": t.which,
        },
        "piece": t.piece,
        "side": t.side.value,
    }


def tower_from_dict(d: dict) -> PlacedTower:
    e = d.get("exact", {})
    a = Point(as_rational(e.get("ax", d["x"])), as_rational(e.get("ay", d["y"])))
    b = Point(as_rational(e.get("bx", d["x"])), as_rational(e.get("by", d["y"])))
    return PlacedTower(float(Decimal(d["x"])), float(Decimal(d["y"])), int(d.get("piece", -1)),
                       Side(d.get("side", "L")), a, b, int(e.get("m", 0)), int(e.get("s", 0)),
                       int(e.get("tower", 0)))


def dumps_towers(towers) -> str:
    return json.dumps([tower_to_dict(t) for t in towers], indent=1)


def loads_towers(text: str) -> list:
    try:
        return [tower_from_dict(d) for d in json.loads(text)]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed tower list: {exc}") from None
