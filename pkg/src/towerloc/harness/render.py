"""Deterministic SVG drawings of a polygon, its partition and towers."""
from __future__ import annotations

from pathlib import Path

from ..visibility import KernelKind, kernel

_PALETTE = ("#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
            "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f")
_SIZE = 800.0
_MARGIN = 20.0


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Frame:
    """Maps polygon coordinates to the SVG viewport (y flipped)."""

    def __init__(self, pts):
        xs = [float(p.x) for p in pts]
        ys = [float(p.y) for p in pts]
        self.x0, self.y1 = min(xs), max(ys)
        w = max(max(xs) - self.x0, 1e-12)
        h = max(self.y1 - min(ys), 1e-12)
        self.k = (_SIZE - 2 * _MARGIN) / max(w, h)
        self.width = w * self.k + 2 * _MARGIN
        self.height = h * self.k + 2 * _MARGIN

    def xy(self, x, y):
        return (_MARGIN + (float(x) - self.x0) * self.k, _MARGIN + (self.y1 - float(y)) * self.k)

    def path(self, pts) -> str:
        return " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in (self.xy(p.x, p.y) for p in pts))


def render_svg_text(p, pr=None, towers=()) -> str:
    """SVG markup; ``pr`` None gives an outline-only drawing."""
    verts = p.vertices if hasattr(p, "vertices") else p.points
    fr = _Frame(verts)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(fr.width)}" '
        f'height="{_fmt(fr.height)}" viewBox="0 0 {_fmt(fr.width)} {_fmt(fr.height)}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if pr is not None:
        for i, piece in enumerate(pr.pieces):
            color = _PALETTE[i % len(_PALETTE)]
            out.append(f'<polygon class="piece" data-piece="{i}" points="{fr.path(piece.points)}" '
                       f'fill="{color}" fill-opacity="0.35" stroke="#555" stroke-width="1" '
                       f'stroke-dasharray="4,3"/>')
        for i, piece in enumerate(pr.pieces):
            k = kernel(piece)
            if k.kind is KernelKind.FULL_DIM:
                out.append(f'<polygon class="kernel" data-piece="{i}" points="{fr.path(k.region)}" '
                           f'fill="{_PALETTE[i % len(_PALETTE)]}" fill-opacity="0.9" stroke="none"/>')
            elif k.kind is KernelKind.SEGMENT:
                out.append(f'<polyline class="kernel" data-piece="{i}" points="{fr.path(k.region)}" '
                           f'stroke="#333" stroke-width="3"/>')
        for anchor in pr.anchors:
            out.append(_arrow(fr, anchor))
    out.append(f'<polygon class="outline" points="{fr.path(verts)}" fill="none" '
               f'stroke="black" stroke-width="2"/>')
    for t in towers:
        x, y = fr.xy(t.x, t.y)
        out.append(f'<circle class="tower" data-piece="{t.piece}" cx="{_fmt(x)}" cy="{_fmt(y)}" '
                   f'r="4" fill="crimson" stroke="black" stroke-width="0.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _arrow(fr: _Frame, anchor) -> str:
    """Segment of the support line plus a tick pointing into the served half-plane."""
    a, b = anchor.segment
    ax, ay = fr.xy(a.x, a.y)
    bx, by = fr.xy(b.x, b.y)
    mx, my = (ax + bx) / 2, (ay + by) / 2
    dx, dy = bx - ax, by - ay
    L = max((dx * dx + dy * dy) ** 0.5, 1e-12)
    # screen y is flipped, so the geometric left normal is (dy, -dx) here
    nx, ny = dy / L, -dx / L
    if anchor.side.value == "R":
        nx, ny = -nx, -ny
    tx, ty = mx + 18 * nx, my + 18 * ny
    return (f'<g class="anchor" data-piece="{anchor.piece}">'
            f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}" '
            f'stroke="navy" stroke-width="2.5"/>'
            f'<line x1="{_fmt(mx)}" y1="{_fmt(my)}" x2="{_fmt(tx)}" y2="{_fmt(ty)}" '
            f'stroke="navy" stroke-width="1.5"/>'
            f'<circle cx="{_fmt(tx)}" cy="{_fmt(ty)}" r="2" fill="navy"/></g>')


def render_svg(p, pr=None, towers=(), out_path=None) -> str:
    """Write the drawing to ``out_path`` (if given) and return the markup."""
    text = render_svg_text(p, pr, towers)
    if out_path is not None:
        Path(out_path).write_text(text)
    return text
