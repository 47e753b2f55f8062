"""Enumeration of bitangent classes as unions of cells of a line arrangement.

The combinatorics of ``Lambda ∩ Gamma`` only changes when the vertex of the
line crosses the supporting line of an edge of the curve, or when an end of
the line passes through a vertex of the curve.  Hence the arrangement of the
*critical lines* (edge and ray supports, plus the horizontal, vertical and
diagonal lines through every curve vertex) has cells on which bitangency and
tangency data are constant.

Open 2-cells meet the curve transversally, so bitangency there reduces to the
multiset of crossing multiplicities, evaluated in integer arithmetic by the
crossing kernel.  On a lower-dimensional cell the stable intersection is the
limit of the crossings of any adjacent 2-cell, which gives the limit points
directly; overlaps can only come from curve pieces supported on the critical
lines through the cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from . import kernel
from .arrangement import Arrangement, Line, build_arrangement
from .errors import ClassCountNotSeven
from .intersect import (
    END_DIRS,
    END_NAMES,
    Component,
    IntersectionReport,
    Piece,
    TropicalLine,
    _closed_pieces,
    _group,
    curve_pieces,
    det,
    tangency_points,
)
from .newton import TropicalCurve

AXIS_DIRS = ((1, 0), (0, 1), (1, 1))


def critical_lines(curve: TropicalCurve) -> list[Line]:
    lines = set()
    for _key, a, dvec, _b, prim in curve_pieces(curve):
        lines.add(Line.through(a, prim))
    for p, _t in curve.vertices:
        for d in AXIS_DIRS:
            lines.add(Line.through(p, d))
    return sorted(lines)


@dataclass
class CellData:
    bitangent: bool
    report: IntersectionReport | None = None
    on_curve: bool = False
    curve_vertex: int | None = None
    tangencies: list = field(default_factory=list)


@dataclass
class BitangentClass:
    cells: list                       # arrangement cell ids (closed subcomplex)
    arrangement: Arrangement
    data: dict                        # cell id -> CellData
    curve: TropicalCurve

    def cells_of_dim(self, d):
        return [c for c in self.cells if self.arrangement.cells[c].dim == d]

    @property
    def dimension(self) -> int:
        return max(self.arrangement.cells[c].dim for c in self.cells)

    @property
    def bounded(self) -> bool:
        return all(self.arrangement.cells[c].bounded for c in self.cells)

    def recession_directions(self) -> set:
        out = set()
        for c in self.cells:
            out.update(self.arrangement.cells[c].recession)
        return out

    def contains(self, p) -> bool:
        return self.locate(p) is not None

    def locate(self, p):
        sv = self.arrangement.sign_vector(p)
        return self._signs().get(sv)

    def _signs(self):
        if not hasattr(self, "_sv"):
            self._sv = {self.arrangement.sign_vector(self.arrangement.cells[c].sample): c for c in self.cells}
        return self._sv

    def sample_member(self, rng):
        """A random exact member point (uniform over cells, then inside the cell)."""
        c = self.arrangement.cells[rng.choice(self.cells)]
        if c.dim == 0:
            return c.sample
        if c.dim == 1:
            (a, b) = c.polygon
            t = Fraction(rng.randint(1, 999), 1000)
            return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
        poly = c.polygon
        ws = [rng.randint(1, 50) for _ in poly]
        s = sum(ws)
        return (sum(w * q[0] for w, q in zip(ws, poly)) / s, sum(w * q[1] for w, q in zip(ws, poly)) / s)


class CurveIndex:
    """Integer-scaled copies of the curve pieces for the crossing kernel."""

    def __init__(self, curve: TropicalCurve):
        self.curve = curve
        self.pieces = curve_pieces(curve)
        dens = [1]
        for p, _t in curve.vertices:
            dens += [Fraction(p[0]).denominator, Fraction(p[1]).denominator]
        self.scale = lcm(*dens)
        S = self.scale
        self.int_pieces = []
        self.prims = []
        for key, a, dvec, bounded, prim in self.pieces:
            self.int_pieces.append((int(a[0] * S), int(a[1] * S), int(dvec[0] * S) if bounded else dvec[0],
                                    int(dvec[1] * S) if bounded else dvec[1], 1 if bounded else 0))
            self.prims.append(prim)
        self.by_line = {}
        for n, (key, a, dvec, bounded, prim) in enumerate(self.pieces):
            self.by_line.setdefault(Line.through(a, prim), []).append(n)
        self.vertex_at = {p: k for k, (p, _t) in enumerate(curve.vertices)}

    def homogeneous(self, p):
        x, y = Fraction(p[0]), Fraction(p[1])
        w = lcm(x.denominator, y.denominator)
        return (int(x * w * self.scale), int(y * w * self.scale), w)


def _limit_points(index: CurveIndex, p, crossings):
    """Limits at p of the crossings recorded in an adjacent open cell."""
    found = {}
    for k, idx, m in crossings:
        u = END_DIRS[END_NAMES[k]]
        _key, a, dvec, _b, _prim = index.pieces[idx]
        t = Fraction(det((a[0] - p[0], a[1] - p[1]), dvec), det(u, dvec))
        pt = (p[0] + t * u[0], p[1] + t * u[1])
        rec = found.setdefault(pt, [0, END_NAMES[k], t])
        rec[0] += m
        if t == 0:
            rec[1] = "x"
    return found


def _report_at(index: CurveIndex, arr: Arrangement, cell_id, face_crossings) -> IntersectionReport:
    cell = arr.cells[cell_id]
    p = cell.sample
    found = _limit_points(index, p, face_crossings[cell.faces[0]])
    supported = []
    for li in cell.lines:
        supported.extend(index.pieces[n] for n in index.by_line.get(arr.lines[li], ()))
    closed = _closed_pieces(p, supported)
    for pt, (m, end, t) in found.items():
        closed.append(Piece("h" if end == "x" else end, t, t, ("pt", pt)))
    comps = _group(closed)
    points = []
    for pt, (m, end, t) in sorted(found.items()):
        points.append((pt, m))
        for c in comps:
            if any(pc.gamma == ("pt", pt) for pc in c.pieces):
                c.points.append((pt, m, end, t))
                c.mult += m
                break
    overlaps = [(pc.end, pc.lo, pc.hi, pc.gamma) for c in comps for pc in c.overlaps]
    return IntersectionReport(TropicalLine(p), points, comps, overlaps)


def _face_report(index: CurveIndex, p, crossings) -> IntersectionReport:
    found = _limit_points(index, p, crossings)
    comps = []
    points = []
    for pt, (m, end, t) in sorted(found.items()):
        points.append((pt, m))
        c = Component([Piece(end, t, t, index.pieces[0][0])], [(pt, m, end, t)], m)
        comps.append(c)
    return IntersectionReport(TropicalLine(p), points, comps, [])


def _is_bitangent_mults(ms) -> bool:
    ms = sorted(ms)
    return ms == [2, 2] or ms == [4]


@dataclass
class Enumeration:
    curve: TropicalCurve
    arrangement: Arrangement
    index: CurveIndex
    face_crossings: dict
    bitangent_cells: dict             # cell id -> CellData
    classes: list


def sweep(curve: TropicalCurve, backend=None) -> Enumeration:
    index = CurveIndex(curve)
    arr = build_arrangement(critical_lines(curve))
    faces = arr.of_dim(2)
    hom = [index.homogeneous(arr.cells[f].sample) for f in faces]
    rows = kernel.crossings(index.int_pieces, index.prims, hom, backend=backend)
    face_crossings = dict(zip(faces, rows))
    data = {}
    for f, row in face_crossings.items():
        if _is_bitangent_mults([m for _k, _i, m in row]):
            data[f] = CellData(True, _face_report(index, arr.cells[f].sample, row))
    for cid, cell in enumerate(arr.cells):
        if cell.dim == 2:
            continue
        if not any(arr.lines[li] in index.by_line for li in cell.lines):
            # no curve piece through the cell: components are the limit points
            found = _limit_points(index, cell.sample, face_crossings[cell.faces[0]])
            if not _is_bitangent_mults([m for m, _e, _t in found.values()]):
                continue
        rep = _report_at(index, arr, cid, face_crossings)
        if _is_bitangent_mults([c.mult for c in rep.components]):
            data[cid] = CellData(True, rep)
    for cid, d in data.items():
        cell = arr.cells[cid]
        d.curve_vertex = index.vertex_at.get(cell.sample) if cell.dim == 0 else None
        d.on_curve = cell.dim < 2 and _on_curve(index, arr, cell)
    classes = _components(arr, data, curve)
    return Enumeration(curve, arr, index, face_crossings, data, classes)


def _on_curve(index, arr, cell) -> bool:
    p = cell.sample
    if p in index.vertex_at:
        return True
    for li in cell.lines:
        for n in index.by_line.get(arr.lines[li], ()):
            _key, a, dvec, bounded, _prim = index.pieces[n]
            rel = (p[0] - a[0], p[1] - a[1])
            k = 0 if dvec[0] != 0 else 1
            s = rel[k] / dvec[k]
            if s >= 0 and (not bounded or s <= 1):
                return True
    return False


def _components(arr, data, curve):
    ids = sorted(data)
    parent = {c: c for c in ids}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for c in ids:
        cell = arr.cells[c]
        if cell.dim == 2:
            for b in cell.boundary:
                if b in data:
                    union(c, b)
        elif cell.dim == 1:
            for e in cell.ends:
                if e is not None and e in data:
                    union(c, e)
    groups = {}
    for c in ids:
        groups.setdefault(find(c), []).append(c)
    out = []
    for cells in groups.values():
        out.append(BitangentClass(sorted(cells), arr, {c: data[c] for c in cells}, curve))
    out.sort(key=lambda k: min(arr.cells[c].sample for c in k.cells))
    return out


def closure_defects(cls: BitangentClass) -> list:
    """Cells of the class whose boundary cells are missing from it."""
    arr = cls.arrangement
    have = set(cls.cells)
    bad = []
    for c in cls.cells:
        cell = arr.cells[c]
        need = cell.boundary if cell.dim == 2 else [e for e in cell.ends if e is not None]
        if any(b not in have for b in need):
            bad.append(c)
    return bad


def attach_tangencies(cls: BitangentClass) -> None:
    for c in cls.cells:
        d = cls.data[c]
        if not d.tangencies:
            d.tangencies = tangency_points(cls.curve, d.report.line, d.report)


def enumerate_classes(curve: TropicalCurve, strict: bool = True, backend=None) -> list[BitangentClass]:
    en = sweep(curve, backend=backend)
    if strict and len(en.classes) != 7:
        raise ClassCountNotSeven(f"found {len(en.classes)} bitangent classes")
    for cls in en.classes:
        attach_tangencies(cls)
    return en.classes
