"""Complex and real lifting multiplicities of tropical bitangents.

Every classical bitangent ``y + m + n x = 0`` is recorded by the signs of its
homogeneous coefficients ``(c_x, c_y, c_z) = (n, 1, m)``.  A tangency in the
horizontal, diagonal or vertical end pins down the ratio ``c_z/c_y = m``,
``c_x/c_y = n`` or ``c_z/c_x = m/n``.  The local real-lifting conditions are
stated for one orientation of each tangency type; a tangency elsewhere is
moved there by an element of S3, which permutes lattice points, signs and the
line coefficients simultaneously.

Two routes decide realness.  The composed route below chains the local
conditions tangency by tangency.  The catalog route evaluates the per-shape
sign monomials of the shape catalog.  They are compared in
:func:`tropbt.reality.lift_class`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ConditionMismatch, UnclassifiableTangency, ZeroCoefficient
from .intersect import ALLOWED_EDGE_DIRS, END_DIRS, TangencyDatum, det, same_line_dir
from .newton import TropicalCurve
from .quartic import S3_ELEMENTS, S3Element, apply_s3_direction, apply_s3_lattice

LOCAL_MULT = {"1": 0, "2": 1, "3a": 2, "3b": 2, "3c": 2, "5a": 2}

# line variables as degree-one lattice points
VAR_POINT = {"x": (1, 0), "y": (0, 1), "z": (0, 0)}
POINT_VAR = {p: v for v, p in VAR_POINT.items()}
# the ratio pinned down by a tangency in each end: (numerator, denominator)
END_RATIO = {"h": ("z", "y"), "d": ("x", "y"), "v": ("z", "x")}


# --- complex multiplicities -----------------------------------------------

def member_weight(data: list[TangencyDatum]) -> int:
    """Number of classical bitangent triples tropicalizing to the member."""
    if not data:
        return 0
    if len(data) == 1:
        d = data[0]
        if d.mult != 4:
            raise UnclassifiableTangency("a single tangency of multiplicity two")
        return 1 if d.type in ("5b", "6b") else 0
    a, b = data
    if a.component_mult == 4 or b.component_mult == 4:
        if a.type == b.type == "3b" and "x" not in (a.end, b.end):
            return 4                     # the star of the curve is the line
        return 0                         # (3b) with a tangency at the vertex
    if a.end == b.end and a.end != "x":
        return 0
    return _local(a, b) * _local(b, a)


def _local(d: TangencyDatum, other: TangencyDatum) -> int:
    if d.type in ("4", "6a"):
        if d.partner_dir is None:
            raise UnclassifiableTangency(f"type ({d.type}) without a free edge")
        return abs(det(d.partner_dir, END_DIRS[other.end]))
    if d.type not in LOCAL_MULT:
        raise UnclassifiableTangency(f"type ({d.type}) in a multiplicity-two pair")
    return LOCAL_MULT[d.type]


# --- frames ---------------------------------------------------------------

def frame_moving(end: str, target: str) -> S3Element:
    """First S3 element (in word order) sending the given end to ``target``."""
    for s in S3_ELEMENTS:
        if apply_s3_direction(s, END_DIRS[end]) == END_DIRS[target]:
            return s
    raise AssertionError("S3 acts transitively on the ends")


def frames_moving(end: str, target: str) -> list[S3Element]:
    return [s for s in S3_ELEMENTS if apply_s3_direction(s, END_DIRS[end]) == END_DIRS[target]]


def end_image(sigma: S3Element, end: str) -> str:
    d = apply_s3_direction(sigma, END_DIRS[end])
    return next(k for k, v in END_DIRS.items() if v == d)


class LineSigns:
    """Known sign relations between the homogeneous line coefficients."""

    def __init__(self):
        self._rel = {}               # (a, b) -> sign of c_a / c_b

    def fix(self, end: str, sign: int):
        a, b = END_RATIO[end]
        self._rel[(a, b)] = sign
        self._rel[(b, a)] = sign
        for (p, q), s in list(self._rel.items()):
            for (r, t), u in list(self._rel.items()):
                if q == r and p != t:
                    self._rel.setdefault((p, t), s * u)

    def ratio(self, a: str, b: str) -> int:
        if a == b:
            return 1
        try:
            return self._rel[(a, b)]
        except KeyError:
            raise ConditionMismatch(f"sign of c_{a}/c_{b} is not determined by the tangencies") from None

    def in_frame(self, rho: S3Element, a: str, b: str) -> int:
        """Sign of c'_a / c'_b for the line transported by ``rho``."""
        inv = rho.inverse()
        va = POINT_VAR[apply_s3_lattice(inv, VAR_POINT[a], degree=1)]
        vb = POINT_VAR[apply_s3_lattice(inv, VAR_POINT[b], degree=1)]
        return self.ratio(va, vb)


# --- local data read off the subdivision ----------------------------------

def _tri_of_vertex(curve: TropicalCurve, k: int):
    return curve.vertices[k][1]


def _edge_triangles(curve: TropicalCurve, carrier):
    kind, idx = carrier
    if kind != "edge":
        raise UnclassifiableTangency("overlap tangency away from a bounded edge")
    e = curve.bounded_edges[idx]
    return [_tri_of_vertex(curve, k) for k in e.ends]


def type2_dual_edge(curve: TropicalCurve, d: TangencyDatum):
    """Dual edge of the curve edge producing a type-(2) tangency."""
    allowed = ALLOWED_EDGE_DIRS[d.end]
    k = d.carrier[1]
    hits = []
    for v, key in curve.incident(k):
        if any(same_line_dir(v, a) for a in allowed):
            hits.append(key)
    if len(hits) != 1:
        raise UnclassifiableTangency(f"type (2) vertex with {len(hits)} admissible edges")
    kind, idx = hits[0]
    return curve.bounded_edges[idx].dual if kind == "edge" else curve.rays[idx].dual


def determined_sign(curve: TropicalCurve, d: TangencyDatum, s) -> int | None:
    """Sign of the ratio fixed by a tangency in an end, if it fixes one."""
    if d.end == "x":
        return None
    if d.type == "2":
        p, q = type2_dual_edge(curve, d)
        return -s[p] * s[q]
    if d.type in ("3a", "3c"):
        p, q = d.dual
        return s[p] * s[q]
    return None


def _moved(rho, pts):
    return [apply_s3_lattice(rho, p) for p in pts]


def _horizontal_data(curve, d, rho):
    """(u, v) data of a horizontal overlap in the frame ``rho``.

    Returns ``(low, high, left, right)``: the two vertices of the vertical dual
    edge (by height) and the third vertices of the triangles on its left and
    right."""
    low, high = sorted(_moved(rho, d.dual), key=lambda p: p[1])
    if low[0] != high[0] or high[1] != low[1] + 1:
        raise UnclassifiableTangency("overlap dual edge is not vertical in its frame")
    left = right = None
    for tri in _edge_triangles(curve, d.carrier):
        third = [p for p in _moved(rho, tri) if p not in (low, high)]
        (t,) = third
        if t[0] == low[0] - 1:
            left = t
        elif t[0] == low[0] + 1:
            right = t
    if left is None or right is None:
        raise UnclassifiableTangency("triangles at an overlap edge are not on both sides")
    return low, high, left, right


def condition_3c(curve, d, s, rho=None) -> bool:
    rho = rho or frame_moving(d.end, "h")
    sr = _signs_in(rho, s)
    (u, v), high, (_, w), (_, r) = _horizontal_data(curve, d, rho)
    e = r + w
    val = (-1) ** e * (sr[(u, v)] * sr[high]) ** e * sr[(u + 1, r)] * sr[(u - 1, w)]
    return val > 0


def condition_3a(curve, d, s, line: LineSigns, rho=None) -> bool:
    rho = rho or frame_moving(d.end, "h")
    sr = _signs_in(rho, s)
    (u, v), high, (_, w), _right = _horizontal_data(curve, d, rho)
    sn = line.in_frame(rho, "x", "y")
    e = w + v
    val = (-1) ** (e + 1) * (sr[(u, v)] * sr[high]) ** e * sr[(u - 1, w)] * sr[high] * sn
    return val > 0


def _triangle_edge(tri, direction):
    for a in range(3):
        for b in range(a + 1, 3):
            p, q = tri[a], tri[b]
            if same_line_dir((q[0] - p[0], q[1] - p[1]), direction):
                return p, q
    raise UnclassifiableTangency(f"dual triangle without an edge of direction {direction}")


def condition_vertex(curve, d, partner: TangencyDatum, s, line: LineSigns, rho=None) -> bool:
    """Types (4), (6a) and (5a) with the partner tangency in the diagonal end."""
    rho = rho or frame_moving(partner.end, "d")
    sr = _signs_in(rho, s)
    sn = line.in_frame(rho, "x", "y")
    if d.type == "4":
        p, q = _moved(rho, d.dual)
        if not same_line_dir((q[0] - p[0], q[1] - p[1]), (1, 1)):
            raise UnclassifiableTangency("type (4) dual edge not diagonal in its frame")
        return -sn * sr[p] * sr[q] > 0
    tri = _moved(rho, d.dual)
    if d.type == "6a":
        p, q = _triangle_edge(tri, (1, 1))
        return -sn * sr[p] * sr[q] > 0
    if d.type == "5a":
        p, q = _triangle_edge(tri, (1, -1))
        return sn * sr[p] * sr[q] > 0
    raise UnclassifiableTangency(f"no vertex condition for type ({d.type})")


def _signs_in(rho, s):
    inv = rho.inverse()
    return {p: s[apply_s3_lattice(inv, p)] for p in s}


# --- the shape (C) member ---------------------------------------------------

def shape_c_frame(curve: TropicalCurve, vertex: int) -> list[S3Element]:
    """Frames in which the shortest edge at the vertex is vertical and the
    horizontal one is not longer than the diagonal one."""
    lengths = {}
    for v, (kind, idx) in curve.incident(vertex):
        if kind != "edge":
            raise UnclassifiableTangency("star-shaped vertex with a ray")
        for name, u in END_DIRS.items():
            if tuple(v) == u:
                lengths[name] = curve.bounded_edges[idx].length
    if len(lengths) != 3:
        raise UnclassifiableTangency("vertex star is not a tropical line")
    out = []
    for rho in S3_ELEMENTS:
        ln = {end_image(rho, k): x for k, x in lengths.items()}
        if ln["v"] < ln["h"] <= ln["d"]:
            out.append(rho)
    return out


def shape_c_marks(curve: TropicalCurve, vertex: int, rho: S3Element):
    """Marked vertices (0,i), (j,0), (k,4-k) in the frame ``rho``."""
    marks = {}
    for v, (kind, idx) in curve.incident(vertex):
        e = curve.bounded_edges[idx]
        far = e.ends[1] if e.ends[0] == vertex else e.ends[0]
        dual = set(_moved(rho, e.dual))
        (t,) = [p for p in _moved(rho, _tri_of_vertex(curve, far)) if p not in dual]
        marks[frozenset(dual)] = t
    i = marks[frozenset({(1, 1), (1, 2)})]
    j = marks[frozenset({(1, 1), (2, 1)})]
    k = marks[frozenset({(1, 2), (2, 1)})]
    if i[0] != 0 or j[1] != 0 or k[0] + k[1] != 4:
        raise UnclassifiableTangency("shape (C) marked vertices off the boundary")
    return i[1], j[0], k[0]


def condition_shape_c_local(curve, vertex, s, rho) -> bool:
    """Radicand signs of the two local solutions, from the initial forms of the
    re-embedded coefficients (normalized so that a_12 = 1)."""
    sr = _signs_in(rho, s)
    i, j, k = shape_c_marks(curve, vertex, rho)
    n = {p: sr[p] * sr[(1, 2)] for p in sr}
    a00 = n[(0, i)] * (-n[(1, 1)]) ** i
    a40 = n[(k, 4 - k)] * (-n[(2, 1)]) ** (4 - k)
    if j == 2:
        a20 = n[(2, 0)]
    else:
        a20 = -n[(j, 0)] * (n[(2, 1)] * n[(1, 1)]) ** abs(2 - j)
    return a00 * a20 > 0 and a20 * a40 > 0


# --- composed realness per member --------------------------------------------

@dataclass
class MemberLift:
    point: tuple
    weight: int
    real: bool
    tangencies: list = field(default_factory=list)


def member_real(curve: TropicalCurve, data: list[TangencyDatum], s) -> bool:
    """Composed local conditions for a member of positive weight."""
    if len(data) == 1:
        return True                                   # (5b) and (6b) lift uniquely
    a, b = data
    if a.component_mult == 4:
        vertex = curve.vertex_index(_common_vertex(curve, a, b))
        frames = shape_c_frame(curve, vertex)
        if not frames:
            raise UnclassifiableTangency("no admissible frame for a star-shaped vertex")
        verdicts = {condition_shape_c_local(curve, vertex, s, rho) for rho in frames}
        if len(verdicts) != 1:
            raise ConditionMismatch("shape (C) frames disagree")
        return verdicts.pop()
    line = LineSigns()
    for d in data:
        sg = determined_sign(curve, d, s)
        if sg is not None:
            line.fix(d.end, sg)
    ok = True
    for d, other in ((a, b), (b, a)):
        if d.type == "3c":
            ok &= condition_3c(curve, d, s)
        elif d.type == "3a":
            ok &= condition_3a(curve, d, s, line)
        elif d.type in ("4", "6a") and _local(d, other) == 2:
            ok &= condition_vertex(curve, d, other, s, line)
        elif d.type == "5a":
            ok &= condition_vertex(curve, d, other, s, line)
    return bool(ok)


def _common_vertex(curve, a, b):
    ea = set(curve.bounded_edges[a.carrier[1]].ends)
    eb = set(curve.bounded_edges[b.carrier[1]].ends)
    (k,) = ea & eb
    return curve.point(k)


def complex_mults(cls) -> dict:
    """Weights of the 0-cells of a class with positive weight."""
    arr = cls.arrangement
    out = {}
    for c in cls.cells:
        cell = arr.cells[c]
        w = member_weight(cls.data[c].tangencies)
        if w and cell.dim != 0:
            raise UnclassifiableTangency(f"positive weight on a {cell.dim}-cell at {cell.sample}")
        if w:
            out[cell.sample] = w
    return out


def composed_members(cls, signs) -> list[MemberLift]:
    out = []
    for c in cls.cells:
        data = cls.data[c].tangencies
        w = member_weight(data)
        if w:
            pt = cls.arrangement.cells[c].sample
            out.append(MemberLift(pt, w, member_real(cls.curve, data, signs), data))
    out.sort(key=lambda m: m.point)
    return out


def composed_real(cls, signs) -> bool:
    """Realness of a class from the local conditions of its weighted members."""
    members = composed_members(cls, signs)
    verdicts = {m.real for m in members}
    if len(verdicts) != 1:
        detail = ", ".join(f"{tuple(map(str, m.point))}:{m.real}" for m in members)
        raise ConditionMismatch(f"members of one class disagree on realness ({detail})")
    return verdicts.pop()


# --- multiplicity-four initial forms ------------------------------------------

@dataclass(frozen=True)
class InitialForms:
    m: float
    n: float
    p: tuple
    p_prime: tuple


def mult4_initial_forms(side: str, a: float, b: float, c: float) -> InitialForms:
    """Initial forms of the unique bitangent triple over the two multiplicity-four
    configurations.

    Parameters
    ----------
    side : {"left", "right"}
        ``"left"`` uses the local equation ``a x + b y^3 + c y^4``, ``"right"``
        uses ``a x + b' x y + c y^4`` with ``b`` playing the role of ``b'``.
    a, b, c : float
        Non-zero initial coefficients.

    Returns
    -------
    InitialForms
        ``m``, ``n`` and the two tangency points.  The left slope is
        ``-b/(8c)``, the value under which the line equation holds with
        the stated ``n`` and tangency points.
    """
    if a == 0 or b == 0 or c == 0:
        raise ZeroCoefficient("initial coefficients must be non-zero")
    r3, r2 = math.sqrt(3.0), math.sqrt(2.0)
    if side == "left":
        m = -b / (8 * c)
        n = 8 * a * c * c / b ** 3
        pts = [(b ** 4 * (3 + e * 2 * r3) / (64 * a * c ** 3), -b * (1 + e * r3) / (4 * c)) for e in (1, -1)]
    elif side == "right":
        m = -a / b
        n = b ** 3 / (4 * a * a * c)
        pts = [(4 * a ** 3 * c * (1 + e * r2) / b ** 4, -e * r2 * a / b) for e in (1, -1)]
    else:
        raise ValueError("side must be 'left' or 'right'")
    return InitialForms(m, n, pts[0], pts[1])


def local_equations(side: str, a, b, c, m, n, pt):
    """Values of the local quartic, the line and their Wronskian at ``pt``."""
    x, y = pt
    if side == "left":
        q = a * x + b * y ** 3 + c * y ** 4
        qx, qy = a, 3 * b * y ** 2 + 4 * c * y ** 3
    else:
        q = a * x + b * x * y + c * y ** 4
        qx, qy = a + b * y, b * x + 4 * c * y ** 3
    ell = y + m + n * x
    wr = qx * 1 - qy * n
    return q, ell, wr

