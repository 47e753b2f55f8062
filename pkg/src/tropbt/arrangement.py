"""Exact planar line arrangements.

Lines are ``a*x + b*y = c`` with a primitive integer normal ``(a, b)`` and a
rational offset.  The arrangement is clipped to a box that strictly contains
every crossing, traced as a half-edge structure, and reported as 0-, 1- and
2-cells with interior sample points.  A cell touching the box is unbounded;
its recession cone is recovered from the true (non-box) lines bounding it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd


@dataclass(frozen=True, order=True)
class Line:
    a: int
    b: int
    c: Fraction

    @staticmethod
    def through(point, direction) -> "Line":
        dx, dy = direction
        a, b = dy, -dx
        g = gcd(a, b)
        a, b = a // g, b // g
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        return Line(a, b, Fraction(a * point[0] + b * point[1]))

    @property
    def direction(self) -> tuple[int, int]:
        return (-self.b, self.a)

    def side(self, p) -> int:
        v = self.a * p[0] + self.b * p[1] - self.c
        return (v > 0) - (v < 0)


def intersect(l1: Line, l2: Line):
    d = l1.a * l2.b - l1.b * l2.a
    if d == 0:
        return None
    x = (l1.c * l2.b - l1.b * l2.c) / d
    y = (l1.a * l2.c - l1.c * l2.a) / d
    return (x, y)


def _angle_key(v):
    """Sort key for directions by angle in [0, 2*pi) without floating point."""
    half = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    return half, v


class _AngleCmp:
    __slots__ = ("v", "half")

    def __init__(self, v):
        self.v = v
        self.half = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

    def __lt__(self, other):
        if self.half != other.half:
            return self.half < other.half
        return self.v[0] * other.v[1] - self.v[1] * other.v[0] > 0


@dataclass
class Cell:
    dim: int
    sample: tuple
    bounded: bool
    lines: tuple                      # indices of arrangement lines containing the cell
    faces: tuple = ()                 # adjacent 2-cells (for 0/1-cells)
    boundary: tuple = ()              # for 2-cells: boundary 1-cell and 0-cell ids
    direction: tuple | None = None    # for 1-cells: primitive direction of the line
    ends: tuple = ()                  # for 1-cells: endpoint 0-cell ids (None = infinite)
    polygon: tuple = ()               # for 2-cells: clipped boundary polygon; 1-cells: clipped segment
    recession: tuple = ()             # recession rays of an unbounded cell


@dataclass
class Arrangement:
    lines: list
    cells: list = field(default_factory=list)
    box: tuple = ()

    def of_dim(self, d):
        return [k for k, c in enumerate(self.cells) if c.dim == d]

    def sign_vector(self, p) -> tuple:
        return tuple(l.side(p) for l in self.lines)


def dedupe_lines(lines) -> list:
    return sorted(set(lines))


def build_arrangement(lines, margin=None) -> Arrangement:
    lines = dedupe_lines(lines)
    arr = Arrangement(lines)
    n = len(lines)
    pts = {}
    on_line = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            p = intersect(lines[i], lines[j])
            if p is None:
                continue
            pts.setdefault(p, set()).update((i, j))
    for p, ls in pts.items():
        for i in ls:
            on_line[i].append(p)
    if pts:
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    else:
        lo_x = hi_x = lo_y = hi_y = Fraction(0)
        for l in lines:
            q = _point_on(l)
            lo_x, hi_x = min(lo_x, q[0]), max(hi_x, q[0])
            lo_y, hi_y = min(lo_y, q[1]), max(hi_y, q[1])
    m = Fraction(margin) if margin is not None else Fraction(1) + (hi_x - lo_x) + (hi_y - lo_y)
    box = (lo_x - m, hi_x + m, lo_y - m, hi_y + m)
    arr.box = box
    bx0, bx1, by0, by1 = box
    # box sides as pseudo-lines with index >= n
    sides = [Line(0, 1, by0), Line(1, 0, bx1), Line(0, 1, by1), Line(1, 0, bx0)]
    side_pts = [[(bx0, by0), (bx1, by0)], [(bx1, by0), (bx1, by1)], [(bx0, by1), (bx1, by1)],
                [(bx0, by0), (bx0, by1)]]
    on_box = set()
    for i, l in enumerate(lines):
        hits = []
        for s, sl in enumerate(sides):
            q = intersect(l, sl)
            if q is None:
                continue
            if bx0 <= q[0] <= bx1 and by0 <= q[1] <= by1 and q not in hits:
                hits.append(q)
                side_pts[s].append(q)
        on_line[i].extend(hits)
        on_box.update(hits)
    on_box.update([(bx0, by0), (bx1, by0), (bx0, by1), (bx1, by1)])
    # vertices
    vid = {}
    vpos = []

    def vertex(p):
        k = vid.get(p)
        if k is None:
            k = vid[p] = len(vpos)
            vpos.append(p)
        return k

    # half edges: (tail, head, line index or -1-side)
    he_tail, he_head, he_line = [], [], []
    chains = []
    for i, l in enumerate(lines):
        d = l.direction
        seq = sorted(set(on_line[i]), key=lambda p: p[0] * d[0] + p[1] * d[1])
        chains.append((i, [vertex(p) for p in seq]))
    for s in range(4):
        d = sides[s].direction
        seq = sorted(set(side_pts[s]), key=lambda p: p[0] * d[0] + p[1] * d[1])
        chains.append((-1 - s, [vertex(p) for p in seq]))
    seg_of_he = []
    for tag, seq in chains:
        for a, b in zip(seq, seq[1:]):
            seg = len(he_tail) // 2
            for (u, v) in ((a, b), (b, a)):
                he_tail.append(u)
                he_head.append(v)
                he_line.append(tag)
                seg_of_he.append(seg)
    nh = len(he_tail)
    out = [[] for _ in vpos]
    for h in range(nh):
        out[he_tail[h]].append(h)
    pos_in = {}
    for v, hs in enumerate(out):
        hs.sort(key=lambda h: _AngleCmp((vpos[he_head[h]][0] - vpos[v][0], vpos[he_head[h]][1] - vpos[v][1])))
        for k, h in enumerate(hs):
            pos_in[h] = k
    twin = [h ^ 1 for h in range(nh)]
    nxt = [0] * nh
    for h in range(nh):
        t = twin[h]
        v = he_head[h]
        hs = out[v]
        nxt[h] = hs[(pos_in[t] - 1) % len(hs)]
    face_of = [-1] * nh
    raw_faces = []
    for h in range(nh):
        if face_of[h] != -1:
            continue
        cyc = []
        g = h
        while face_of[g] == -1:
            face_of[g] = len(raw_faces)
            cyc.append(g)
            g = nxt[g]
        raw_faces.append(cyc)
    # assemble cells
    cells = []
    vcell = {}
    for v, p in enumerate(vpos):
        if p in on_box:
            continue
        vcell[v] = len(cells)
        cells.append(Cell(0, p, True, tuple(sorted(pts[p]))))
    ecell = {}
    for h in range(0, nh, 2):
        tag = he_line[h]
        if tag < 0:
            continue
        u, v = he_tail[h], he_head[h]
        pu, pv = vpos[u], vpos[v]
        unb = (pu in on_box) or (pv in on_box)
        mid = ((pu[0] + pv[0]) / 2, (pu[1] + pv[1]) / 2)
        rec = ()
        if unb:
            d = lines[tag].direction
            toward = (pv[0] - pu[0], pv[1] - pu[1]) if pv in on_box else (pu[0] - pv[0], pu[1] - pv[1])
            s = 1 if toward[0] * d[0] + toward[1] * d[1] > 0 else -1
            rec = ((s * d[0], s * d[1]),)
        ecell[h] = len(cells)
        cells.append(Cell(1, mid, not unb, (tag,), direction=lines[tag].direction,
                          ends=(vcell.get(u), vcell.get(v)), polygon=(pu, pv), recession=rec))
    fcell = {}
    for f, cyc in enumerate(raw_faces):
        poly = [vpos[he_tail[h]] for h in cyc]
        area2 = sum(poly[k][0] * poly[(k + 1) % len(poly)][1] - poly[(k + 1) % len(poly)][0] * poly[k][1]
                    for k in range(len(poly)))
        if area2 <= 0:
            continue  # outer face of the box
        corners = _corners(poly)
        a, b, c = corners[0], corners[1], corners[2]
        sample = ((a[0] + b[0] + c[0]) / 3, (a[1] + b[1] + c[1]) / 3)
        touches = any(he_line[h] < 0 for h in cyc)
        bnd = []
        constraints = []
        for h in cyc:
            tag = he_line[h]
            if tag >= 0:
                bnd.append(ecell[h - (h & 1)])
                constraints.append((lines[tag].a * lines[tag].side(sample), lines[tag].b * lines[tag].side(sample)))
            if vpos[he_tail[h]] not in on_box:
                bnd.append(vcell[he_tail[h]])
        rec = _recession(constraints) if touches else ()
        fcell[f] = len(cells)
        cells.append(Cell(2, sample, not touches, (), boundary=tuple(dict.fromkeys(bnd)),
                          polygon=tuple(corners), recession=rec))
    # adjacency of lower cells to faces
    for h in range(0, nh, 2):
        if h in ecell:
            c = cells[ecell[h]]
            c.faces = tuple(fcell[face_of[g]] for g in (h, h + 1) if face_of[g] in fcell)
    for v, k in vcell.items():
        cells[k].faces = tuple(dict.fromkeys(fcell[face_of[h]] for h in out[v] if face_of[h] in fcell))
    arr.cells = cells
    return arr


def _point_on(l: Line):
    if l.b != 0:
        return (Fraction(0), Fraction(l.c, 1) / l.b)
    return (Fraction(l.c) / l.a, Fraction(0))


def _corners(poly):
    """Drop collinear points from a convex polygon."""
    out = []
    n = len(poly)
    for k in range(n):
        a, b, c = poly[k - 1], poly[k], poly[(k + 1) % n]
        if (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]) != 0:
            out.append(b)
    return out


def _recession(constraints):
    """Extreme rays of the cone {d : n.d >= 0 for all n in constraints}."""
    cands = set()
    for n in constraints:
        for d in ((-n[1], n[0]), (n[1], -n[0])):
            g = gcd(d[0], d[1])
            cands.add((d[0] // g, d[1] // g))
    if not constraints:
        return ((1, 0), (0, 1), (-1, 0), (0, -1))
    ok = [d for d in cands if all(n[0] * d[0] + n[1] * d[1] >= 0 for n in constraints)]
    # keep only extreme rays: d is extreme unless strictly between two others
    ext = []
    for d in ok:
        inner = False
        for e in ok:
            for f in ok:
                if e == d or f == d or e == f:
                    continue
                c1 = e[0] * d[1] - e[1] * d[0]
                c2 = d[0] * f[1] - d[1] * f[0]
                c3 = e[0] * f[1] - e[1] * f[0]
                if c1 > 0 and c2 > 0 and c3 > 0:
                    inner = True
        if not inner:
            ext.append(d)
    return tuple(sorted(ext))
