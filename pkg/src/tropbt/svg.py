"""SVG 1.1 picture of a tropical quartic and its bitangent classes.

Cells of a class that miss the curve are drawn black (2-cells gray), cells on
the curve red, and vertices of the curve as unfilled dots.  Member weights are
written next to weighted points.  The view box is the bounding box of the
curve vertices and class points with a margin; everything outside it is
clipped, and unbounded cells get an arrow in a recession direction.
"""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

OFF = "#000000"
FACE = "#9a9a9a"
ON = "#d62728"
CURVE = "#1f4e9c"


def _f(x) -> str:
    return f"{float(x):.4f}".rstrip("0").rstrip(".")


def _pt(p) -> str:
    return f"{_f(p[0])},{_f(-p[1])}"


def _bbox(curve, classes):
    pts = [v for v, _t in curve.vertices]
    for cls in classes:
        arr = cls.arrangement
        pts.extend(arr.cells[c].sample for c in cls.cells if arr.cells[c].dim == 0)
    if not pts:
        pts = [(0, 0)]
    xs = [Fraction(p[0]) for p in pts]
    ys = [Fraction(p[1]) for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
    m = span / 6 + 1
    return min(xs) - m, max(xs) + m, min(ys) - m, max(ys) + m


def render_svg(curve, classes=(), weights=None, width: int = 800) -> str:
    """SVG document; ``weights`` optionally lists per-class ``{point: weight}``."""
    classes = list(classes)
    x0, x1, y0, y1 = _bbox(curve, classes)
    w, h = x1 - x0, y1 - y0
    far = 4 * (w + h)
    stroke = _f(max(w, h) / 300)
    height = int(width * h / w) if w else width
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="{_f(x0)} {_f(-y1)} {_f(w)} {_f(h)}">',
        "<defs>",
        f'<clipPath id="view"><rect x="{_f(x0)}" y="{_f(-y1)}" width="{_f(w)}" height="{_f(h)}"/></clipPath>',
        '<marker id="arrow" viewBox="0 0 10 10" refX="5" refY="5" markerWidth="4" markerHeight="4" '
        'orient="auto"><path d="M 0 0 L 10 5 L 0 10 z" fill="#000000"/></marker>',
        "</defs>",
        f'<g clip-path="url(#view)" stroke-width="{stroke}" stroke-linecap="round">',
        f'<g id="curve" stroke="{CURVE}" fill="none">',
    ]
    for e in curve.bounded_edges:
        a, b = curve.point(e.ends[0]), curve.point(e.ends[1])
        out.append(f'<line x1="{_f(a[0])}" y1="{_f(-a[1])}" x2="{_f(b[0])}" y2="{_f(-b[1])}"/>')
    for r in curve.rays:
        a = curve.point(r.vertex)
        b = (a[0] + far * r.direction[0], a[1] + far * r.direction[1])
        out.append(f'<line x1="{_f(a[0])}" y1="{_f(-a[1])}" x2="{_f(b[0])}" y2="{_f(-b[1])}"/>')
    out.append("</g>")
    dot = max(w, h) / 120
    for k, cls in enumerate(classes):
        arr = cls.arrangement
        ws = weights[k] if weights is not None else {}
        out.append(f'<g id="class-{k}" class="bitangent-class">')
        for dim in (2, 1, 0):
            for c in cls.cells:
                cell = arr.cells[c]
                if cell.dim != dim:
                    continue
                on = cls.data[c].on_curve
                if dim == 2:
                    pts = " ".join(_pt(p) for p in cell.polygon)
                    out.append(f'<polygon points="{pts}" fill="{FACE}" fill-opacity="0.5" stroke="none"/>')
                    if not cell.bounded and cell.recession:
                        d = cell.recession[0]
                        s = cell.sample
                        t = (s[0] + d[0] * w / 10, s[1] + d[1] * w / 10)
                        out.append(f'<line x1="{_f(s[0])}" y1="{_f(-s[1])}" x2="{_f(t[0])}" y2="{_f(-t[1])}" '
                                   f'stroke="{OFF}" marker-end="url(#arrow)"/>')
                elif dim == 1:
                    a, b = cell.polygon
                    marker = ""
                    if None in cell.ends:
                        finite = [arr.cells[e].sample for e in cell.ends if e is not None]
                        if finite and finite[0] == b:
                            a, b = b, a
                        marker = ' marker-end="url(#arrow)"'
                    out.append(f'<line x1="{_f(a[0])}" y1="{_f(-a[1])}" x2="{_f(b[0])}" y2="{_f(-b[1])}" '
                               f'stroke="{ON if on else OFF}"{marker}/>')
                else:
                    p = cell.sample
                    vertex = cls.data[c].curve_vertex is not None
                    fill = "#ffffff" if vertex else (ON if on else OFF)
                    out.append(f'<circle cx="{_f(p[0])}" cy="{_f(-p[1])}" r="{_f(dot)}" fill="{fill}" '
                               f'stroke="{ON if on else OFF}"/>')
                    if ws.get(p):
                        out.append(f'<text x="{_f(p[0] + dot)}" y="{_f(-p[1] - dot)}" font-size="{_f(4 * dot)}" '
                                   f'fill="{OFF}" stroke="none">{ws[p]}</text>')
        s = arr.cells[cls.cells[0]].sample
        out.append(f'<text x="{_f(s[0] - 3 * dot)}" y="{_f(-s[1] + 5 * dot)}" font-size="{_f(4 * dot)}" '
                   f'fill="{CURVE}" stroke="none">{escape(f"({k + 1})")}</text>')
        out.append("</g>")
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
