"""Tropical lines, stable intersection with the quartic, bitangency, and
local tangency classification.

A tropical line is stored by its vertex ``p``; its ends leave ``p`` in the
directions (-1,0), (0,-1) and (1,1).  Stable intersection is computed by
translating the line by ``eps * (1, r)`` for a fixed generic rational ``r``,
intersecting properly, and letting ``eps`` tend to zero symbolically: every
parameter is an affine function ``c0 + c1*eps`` and signs are read
lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NonGenericCurve, NotBitangent, UnclassifiableTangency
from .newton import TropicalCurve

END_DIRS = {"h": (-1, 0), "v": (0, -1), "d": (1, 1)}
END_NAMES = ("h", "v", "d")
DEFAULT_SLOPE = Fraction(7919, 104729)
SECOND_SLOPE = Fraction(-3571, 15013)

# allowed (up to sign) directions of the carrying edge for multiplicity-two
# tangencies of types (1) and (2), per end of the line
ALLOWED_EDGE_DIRS = {
    "d": ((-1, 1), (1, 3), (3, 1)),
    "h": ((1, 2), (-1, 2), (3, 2)),
    "v": ((2, 1), (2, 3), (2, -1)),
}

TYPES = ("1", "2", "3a", "3b", "3c", "4", "5a", "5b", "6a", "6b")


def det(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _lexpos(c0, c1) -> int:
    """Sign of c0 + c1*eps for infinitesimal eps > 0 (0 if identically zero)."""
    if c0 > 0 or (c0 == 0 and c1 > 0):
        return 1
    if c0 < 0 or (c0 == 0 and c1 < 0):
        return -1
    return 0


def same_line_dir(a, b) -> bool:
    return det(a, b) == 0


@dataclass(frozen=True)
class TropicalLine:
    vertex: tuple

    def point_on(self, end: str, t) -> tuple:
        d = END_DIRS[end]
        return (self.vertex[0] + t * d[0], self.vertex[1] + t * d[1])


@dataclass
class Piece:
    """A closed part of the line: an interval [lo, hi] of parameters along one end
    (hi is None for an unbounded overlap).  ``gamma`` names the curve piece."""

    end: str
    lo: Fraction
    hi: Fraction | None
    gamma: tuple


@dataclass
class Component:
    pieces: list
    points: list = field(default_factory=list)   # (point, mult, end, t)
    mult: int = 0

    @property
    def contains_vertex(self) -> bool:
        return any(pc.lo == 0 for pc in self.pieces)

    @property
    def overlaps(self) -> list:
        return [pc for pc in self.pieces if pc.hi is None or pc.hi > pc.lo]


@dataclass
class IntersectionReport:
    line: TropicalLine
    points: list            # (point, multiplicity)
    components: list        # Component
    overlap_segments: list  # (end, lo, hi, gamma)

    @property
    def total(self) -> int:
        return sum(m for _p, m in self.points)


def curve_pieces(curve: TropicalCurve):
    """Every edge and ray as (key, base point, direction vector, bounded?, primitive)."""
    out = []
    for idx, e in enumerate(curve.bounded_edges):
        a = curve.point(e.ends[0])
        b = curve.point(e.ends[1])
        out.append((("edge", idx), a, (b[0] - a[0], b[1] - a[1]), True, e.direction))
    for idx, r in enumerate(curve.rays):
        out.append((("ray", idx), curve.point(r.vertex), r.direction, False, r.direction))
    return out


def _proper_points(curve, p, slope, pieces):
    w = (Fraction(1), Fraction(slope))
    found = {}
    for end in END_NAMES:
        u = END_DIRS[end]
        for key, a, dvec, bounded, prim in pieces:
            dd = det(u, dvec)
            if dd == 0:
                continue
            # p + eps*w + t*u = a + s*dvec
            rhs0 = (a[0] - p[0], a[1] - p[1])
            rhs1 = (-w[0], -w[1])
            t0 = Fraction(det(rhs0, dvec), dd)
            t1 = Fraction(det(rhs1, dvec), dd)
            s0 = Fraction(det(u, rhs0), -dd)
            s1 = Fraction(det(u, rhs1), -dd)
            st = _lexpos(t0, t1)
            ss = _lexpos(s0, s1)
            se = _lexpos(1 - s0, -s1) if bounded else 1
            if st == 0 or ss == 0 or se == 0:
                raise ArithmeticError("perturbation direction is not generic")
            if st > 0 and ss > 0 and se > 0:
                pt = (p[0] + t0 * u[0], p[1] + t0 * u[1])
                m = abs(det(u, prim))
                rec = found.setdefault(pt, [0, end, t0])
                rec[0] += m
                if t0 == 0:
                    rec[1], rec[2] = "x", Fraction(0)
    return found


def _closed_pieces(p, pieces):
    """Set-theoretic intersection of the closed ends with the curve pieces."""
    out = []
    for end in END_NAMES:
        u = END_DIRS[end]
        for key, a, dvec, bounded, prim in pieces:
            dd = det(u, dvec)
            rel = (a[0] - p[0], a[1] - p[1])
            if dd != 0:
                t = Fraction(det(rel, dvec), dd)
                s = Fraction(det(rel, u), dd)
                if t >= 0 and s >= 0 and (not bounded or s <= 1):
                    out.append(Piece(end, t, t, key))
                continue
            if det(rel, u) != 0:
                continue
            # collinear: parametrize the curve piece along u
            k = u[0] if u[0] != 0 else u[1]
            ta = Fraction(rel[0] if u[0] != 0 else rel[1], k)
            sgn = (dvec[0] if u[0] != 0 else dvec[1]) * k
            if bounded:
                tb = ta + Fraction(dvec[0] if u[0] != 0 else dvec[1], k)
                lo, hi = min(ta, tb), max(ta, tb)
            elif sgn > 0:
                lo, hi = ta, None
            else:
                lo, hi = None, ta
            lo = Fraction(0) if lo is None or lo < 0 else lo
            if hi is not None and hi < lo:
                continue
            out.append(Piece(end, lo, hi, key))
    return out


def _group(pieces):
    n = len(pieces)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(n):
        for b in range(a + 1, n):
            pa, pb = pieces[a], pieces[b]
            if pa.lo == 0 and pb.lo == 0:
                parent[find(a)] = find(b)
            elif pa.end == pb.end:
                ha = pa.hi if pa.hi is not None else None
                hb = pb.hi if pb.hi is not None else None
                if (ha is None or pb.lo <= ha) and (hb is None or pa.lo <= hb):
                    parent[find(a)] = find(b)
    groups = {}
    for a in range(n):
        groups.setdefault(find(a), []).append(pieces[a])
    return [Component(g) for g in groups.values()]


def _in_component(comp, end, t):
    for pc in comp.pieces:
        if end == "x" or t == 0:
            if pc.lo == 0:
                return True
        elif pc.end == end and pc.lo <= t and (pc.hi is None or t <= pc.hi):
            return True
    return False


def stable_intersection(curve: TropicalCurve, line: TropicalLine,
                        slope: Fraction = DEFAULT_SLOPE, pieces=None) -> IntersectionReport:
    p = (Fraction(line.vertex[0]), Fraction(line.vertex[1]))
    if pieces is None:
        pieces = curve_pieces(curve)
    try:
        found = _proper_points(curve, p, slope, pieces)
    except ArithmeticError:
        found = _proper_points(curve, p, slope + Fraction(1, 7877), pieces)
    comps = _group(_closed_pieces(p, pieces))
    points = []
    for pt, (m, end, t) in sorted(found.items()):
        points.append((pt, m))
        for c in comps:
            if _in_component(c, end, t):
                c.points.append((pt, m, end, t))
                c.mult += m
                break
        else:
            raise AssertionError("limit point outside the set-theoretic intersection")
    overlaps = [(pc.end, pc.lo, pc.hi, pc.gamma) for c in comps for pc in c.overlaps]
    return IntersectionReport(TropicalLine(p), points, comps, overlaps)


def intersection_multiset(report: IntersectionReport):
    return sorted(report.points)


def bitangent_from_report(report: IntersectionReport) -> bool:
    ms = sorted(c.mult for c in report.components)
    return ms == [2, 2] or ms == [4]


def is_bitangent(curve: TropicalCurve, line: TropicalLine) -> bool:
    return bitangent_from_report(stable_intersection(curve, line))


# --- tangency points and types -------------------------------------------------

@dataclass(frozen=True)
class TangencyDatum:
    location: tuple
    type: str
    mult: int                 # multiplicity of the tangency point (2, or 4 if doubled)
    end: str                  # 'h', 'v', 'd' for an end interior, 'x' for the line vertex
    carrier: tuple            # ('edge', idx) / ('vertex', idx)
    dual: tuple               # dual edge (pair) or dual triangle
    component_mult: int = 2
    partner_dir: tuple | None = None   # direction of the edge used in |det(e, e')|


def _vertex_at(curve, pt):
    return curve.vertex_index(pt)


def _edge_containing(curve, pt):
    """Bounded edge or ray whose relative interior contains pt."""
    for key, a, dvec, bounded, prim in curve_pieces(curve):
        rel = (pt[0] - a[0], pt[1] - a[1])
        if det(rel, dvec) != 0:
            continue
        k = 0 if dvec[0] != 0 else 1
        s = Fraction(rel[k], dvec[k])
        if s > 0 and (not bounded or s < 1):
            return key
    return None


def _dual_of(curve, key):
    kind, idx = key
    if kind == "edge":
        return curve.bounded_edges[idx].dual
    if kind == "ray":
        return curve.rays[idx].dual
    return curve.vertices[idx][1]


def _end_of(line, pt):
    p = line.vertex
    if pt == tuple(p):
        return "x"
    for end in END_NAMES:
        u = END_DIRS[end]
        rel = (pt[0] - p[0], pt[1] - p[1])
        if det(rel, u) == 0 and rel[0] * u[0] + rel[1] * u[1] > 0:
            return end
    raise AssertionError("point not on the line")


def _piece_dir(curve, key):
    kind, idx = key
    if kind == "edge":
        return curve.bounded_edges[idx].direction
    return curve.rays[idx].direction


def _classify_component(curve, line, comp):
    p = tuple(line.vertex)
    m = comp.mult
    overl = comp.overlaps
    vtx = _vertex_at(curve, p)
    if not overl:
        pts = {pt for pt, _m, _e, _t in comp.points}
        if len(pts) != 1:
            raise UnclassifiableTangency("transverse component with several points")
        x = next(iter(pts))
        if x == p:
            if vtx is not None:
                typ = "5a" if m == 2 else "5b"
                return [TangencyDatum(x, typ, m, "x", ("vertex", vtx), _dual_of(curve, ("vertex", vtx)), m)]
            key = _edge_containing(curve, x)
            return [TangencyDatum(x, "4", m, "x", key, _dual_of(curve, key), m, _piece_dir(curve, key))]
        w = _vertex_at(curve, x)
        end = _end_of(line, x)
        if w is not None:
            return [TangencyDatum(x, "2", m, end, ("vertex", w), _dual_of(curve, ("vertex", w)), m)]
        key = _edge_containing(curve, x)
        return [TangencyDatum(x, "1", m, end, key, _dual_of(curve, key), m, _piece_dir(curve, key))]
    ray_overlaps = [pc for pc in overl if pc.gamma[0] == "ray"]
    edge_overlaps = [pc for pc in overl if pc.gamma[0] == "edge"]
    if vtx is not None and comp.contains_vertex:
        if ray_overlaps and all(pc.lo == 0 for pc in ray_overlaps):
            if edge_overlaps:
                raise UnclassifiableTangency("vertex overlap along both a ray and an edge")
            typ = "6a" if m == 2 else "6b"
            star = [d for d, key in curve.incident(vtx) if key not in {pc.gamma for pc in ray_overlaps}]
            free = [d for d in star if not any(same_line_dir(d, u) for u in END_DIRS.values())]
            pdir = free[0] if len(free) == 1 else None
            return [TangencyDatum(p, typ, m, "x", ("vertex", vtx), _dual_of(curve, ("vertex", vtx)), m, pdir)]
        if ray_overlaps:
            raise UnclassifiableTangency("ray overlap away from the line vertex")
        at_vertex = [pc for pc in edge_overlaps if pc.lo == 0]
        if m == 2 and len(edge_overlaps) == 1 and len(at_vertex) == 1:
            pc = edge_overlaps[0]
            mid = line.point_on(pc.end, (pc.lo + pc.hi) / 2)
            return [TangencyDatum(mid, "3b", 2, pc.end, pc.gamma, _dual_of(curve, pc.gamma), 2)]
        if m == 4 and len(at_vertex) == 3:
            return _shape_c_points(curve, line, at_vertex, vtx)
        if m == 4 and len(edge_overlaps) == 1 and len(at_vertex) == 1:
            pc = edge_overlaps[0]
            mid = line.point_on(pc.end, (pc.lo + pc.hi) / 2)
            dual = _dual_of(curve, pc.gamma)
            return [TangencyDatum(mid, "3b", 2, pc.end, pc.gamma, dual, 4),
                    TangencyDatum(p, "3b", 2, "x", ("vertex", vtx), _dual_of(curve, ("vertex", vtx)), 4)]
        raise UnclassifiableTangency(f"vertex-anchored overlap with multiplicity {m}")
    if ray_overlaps:
        raise UnclassifiableTangency("overlap along a ray of the curve")
    if len(edge_overlaps) != 1:
        raise UnclassifiableTangency("several overlap segments in one component")
    pc = edge_overlaps[0]
    mid = line.point_on(pc.end, (pc.lo + pc.hi) / 2)
    if pc.lo == 0:
        if m != 2:
            raise UnclassifiableTangency("partial overlap with multiplicity four")
        return [TangencyDatum(mid, "3a", 2, pc.end, pc.gamma, _dual_of(curve, pc.gamma), 2)]
    if m != 2:
        raise UnclassifiableTangency("edge overlap with multiplicity four")
    return [TangencyDatum(mid, "3c", 2, pc.end, pc.gamma, _dual_of(curve, pc.gamma), 2)]


def _shape_c_points(curve, line, at_vertex, vtx):
    """The star of the curve coincides with the line: place the two tangency
    points on the two longest edges by chip-firing from the vertex."""
    lens = sorted(((pc.hi, pc.end, pc.gamma) for pc in at_vertex), key=lambda x: x[0])
    (l1, _e1, _g1), (l2, e2, g2), (l3, e3, g3) = lens
    if l1 == l2:
        raise NonGenericCurve("the shortest edge at a star-shaped vertex is not unique")
    p2 = line.point_on(e2, (l2 - l1) / 2)
    p3 = line.point_on(e3, (l3 - l1) / 2)
    return [TangencyDatum(p2, "3b", 2, e2, g2, _dual_of(curve, g2), 4),
            TangencyDatum(p3, "3b", 2, e3, g3, _dual_of(curve, g3), 4)]


def tangency_points(curve: TropicalCurve, line: TropicalLine, report: IntersectionReport | None = None):
    if report is None:
        report = stable_intersection(curve, line)
    if not bitangent_from_report(report):
        raise NotBitangent(f"line with vertex {line.vertex} is not bitangent")
    data = []
    for comp in sorted(report.components, key=lambda c: min((pc.end, pc.lo) for pc in c.pieces)):
        data.extend(_classify_component(curve, report.line, comp))
    for d in data:
        _validate(curve, report.line, d)
    return data


def tangency_type(curve: TropicalCurve, line: TropicalLine, location) -> TangencyDatum:
    for d in tangency_points(curve, line):
        if d.location == tuple(location):
            return d
    raise UnclassifiableTangency(f"{location} is not a tangency point")


def _validate(curve, line, d: TangencyDatum):
    if d.type in ("4", "5a", "5b", "6a", "6b") and d.location != tuple(line.vertex):
        raise UnclassifiableTangency("vertex type away from the line vertex")
    if d.mult != 2 or d.type not in ("1", "2"):
        return
    allowed = ALLOWED_EDGE_DIRS[d.end]

    def ok(v):
        return any(same_line_dir(v, a) for a in allowed)

    if d.type == "1":
        if not ok(_piece_dir(curve, d.carrier)):
            raise UnclassifiableTangency(f"type (1) edge direction not allowed at end {d.end}")
    else:
        dirs = [v for v, _k in curve.incident(d.carrier[1])]
        if not any(ok(v) for v in dirs):
            raise UnclassifiableTangency(f"type (2) star not allowed at end {d.end}")
