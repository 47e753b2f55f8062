"""Structural shape rules, representative frames and sign parameters.

The classification of bitangent shapes proceeds by a short decision tree on
the members of a class: the number of connected components of ``Γ ∩ Λ``,
whether the intersection is proper, then the dimension and boundedness of
the class and the tangency types of distinguished members.  Inside a family
the name is fixed by the case splits of the classification (relative order of
vertices, the parallelogram cases for bounded two-dimensional classes).

Each label comes with an orientation rule: a predicate on σ saying that the
σ-image of the class is in the position of the representative (tangency ends,
mandatory dual cells).  The admissible σ are tried in word order.

Sign parameters follow a few recipes in the representative frame:

``v``/``i``
    a horizontal overlap in the horizontal end has dual edge
    ``{(1,v),(1,v+1)}``; ``(0,i)`` is the third vertex of the triangle to its
    left.
``u``/``j``
    a vertical overlap in the vertical end has dual edge ``{(u,1),(u+1,1)}``;
    ``(j,0)`` is the third vertex of the triangle below it.
``k``
    the dual edge of the tangency in the diagonal end contains ``(k,4-k)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (AmbiguousParameter, NonGenericCurve, ParameterNotFound, UnclassifiableTangency,
                     UnrecognizedShape)
from .intersect import TangencyDatum
from .lifting import (complex_mults, end_image, member_weight, shape_c_frame, shape_c_marks,
                      type2_dual_edge)
from .quartic import DEGREE, S3_ELEMENTS, S3Element, apply_s3_lattice, apply_s3_plane

# families sharing one real-lifting template
TEMPLATE_OF = {
    "A": "A", "B": "B", "C": "C",
    "H": "H", "H′": "H", "M": "M", "D": "D",
    "E": "E", "F": "E", "J": "E", "G": "G",
    "I": "I", "N": "I",
    "K": "K", "T": "K", "T′": "K", "T″": "K", "U": "K", "U′": "K", "V": "K",
    "L": "L", "O": "L", "P": "L",
    "L′": "Q", "Q": "Q", "Q′": "Q", "R": "Q", "S": "Q",
}
LABELS = ("A", "B", "C", "D", "E", "F", "G", "H", "H′", "I", "J", "K", "L", "L′", "M", "N", "O", "P",
          "Q", "Q′", "R", "S", "T", "T′", "T″", "U", "U′", "V", "W", "X", "Y", "Z",
          "AA", "BB", "CC", "DD", "EE", "FF", "GG", "HH", "II")


def template_of(label: str) -> str:
    return TEMPLATE_OF.get(label, "none")


# --- members and transformed data -------------------------------------------

@dataclass
class Member:
    cell: int
    dim: int
    point: tuple
    data: list


def _members(cls) -> list[Member]:
    arr = cls.arrangement
    return [Member(c, arr.cells[c].dim, arr.cells[c].sample, cls.data[c].tangencies) for c in cls.cells]


def tend(sigma: S3Element, d: TangencyDatum) -> str:
    return "x" if d.end == "x" else end_image(sigma, d.end)


def tpts(sigma: S3Element, pts) -> frozenset:
    return frozenset(apply_s3_lattice(sigma, p) for p in pts)


def _tri(curve, k):
    return curve.vertices[k][1]


def _edge_dual(curve, d: TangencyDatum):
    """Dual edge of the curve edge carrying a tangency in an end."""
    if d.type == "2":
        return type2_dual_edge(curve, d)
    if d.carrier[0] == "vertex":
        raise UnclassifiableTangency(f"type ({d.type}) at a vertex has no edge")
    return d.dual


# --- parameter recipes ---------------------------------------------------------

def recipe_vi(curve, d: TangencyDatum, sigma: S3Element) -> dict:
    """``v`` and ``i`` from an overlap that lies in the horizontal end."""
    dual = sorted(tpts(sigma, d.dual), key=lambda p: p[1])
    low, high = dual
    if low[0] != 1 or high != (1, low[1] + 1):
        raise ParameterNotFound(f"horizontal overlap with dual edge {dual}, not {{(1,v),(1,v+1)}}")
    out = {"v": low[1]}
    for k in curve.bounded_edges[d.carrier[1]].ends:
        (t,) = [p for p in tpts(sigma, _tri(curve, k)) if p not in dual]
        if t[0] == 0:
            out["i"] = t[1]
    if "i" not in out:
        raise ParameterNotFound("no vertex (0,i) on the triangles of the overlap edge")
    return out


def recipe_uj(curve, d: TangencyDatum, sigma: S3Element) -> dict:
    """``u`` and ``j`` from an overlap that lies in the vertical end."""
    dual = sorted(tpts(sigma, d.dual))
    left, right = dual
    if left[1] != 1 or right != (left[0] + 1, 1):
        raise ParameterNotFound(f"vertical overlap with dual edge {dual}, not {{(u,1),(u+1,1)}}")
    out = {"u": left[0]}
    for k in curve.bounded_edges[d.carrier[1]].ends:
        (t,) = [p for p in tpts(sigma, _tri(curve, k)) if p not in dual]
        if t[1] == 0:
            out["j"] = t[0]
    if "j" not in out:
        raise ParameterNotFound("no vertex (j,0) on the triangles of the overlap edge")
    return out


def recipe_k(curve, d: TangencyDatum, sigma: S3Element) -> dict:
    pts = [p for p in tpts(sigma, _edge_dual(curve, d)) if p[0] + p[1] == DEGREE]
    if not pts:
        raise ParameterNotFound("diagonal tangency edge without a vertex (k,4-k)")
    if len(pts) > 1:
        raise AmbiguousParameter(f"diagonal tangency edge with several vertices (k,4-k): {pts}")
    return {"k": pts[0][0]}


# --- verdict -------------------------------------------------------------------------

@dataclass
class ShapeVerdict:
    label: str
    frames: list                        # admissible σ in word order
    ref: Member | None = None           # member the frame rule and recipes look at
    params_of: object = None            # callable sigma -> dict of parameters
    notes: dict = field(default_factory=dict)

    @property
    def sigma(self) -> S3Element:
        if not self.frames:
            raise UnrecognizedShape(f"no element of S3 moves the class to the {self.label} representative")
        return self.frames[0]


def _frames(pred) -> list:
    return [s for s in S3_ELEMENTS if pred(s)]


def _ends_rule(data, want):
    """σ sends the tangency of each listed type to the wanted end."""
    def pred(s):
        used = set()
        for typ, end in want:
            hit = [k for k, d in enumerate(data) if d.type in typ and k not in used and tend(s, d) == end]
            if not hit:
                return False
            used.add(hit[0])
        return True
    return pred


# --- the decision tree -------------------------------------------------------------

def classify(cls, weights: dict | None = None) -> ShapeVerdict:
    """Label, admissible frames and parameter recipe of a class."""
    from .catalog import coarsen

    if weights is None:
        weights = complex_mults(cls)
    members = _members(cls)
    curve = cls.curve
    every = [d for m in members for d in m.data]
    if any(d.type in ("5b", "6b") or (d.type == "4" and d.mult == 4) for d in every):
        return _shape_ii(cls, members)
    one = [m for m in members if any(d.component_mult == 4 for d in m.data)]
    cc = coarsen(cls, weights)
    if one:
        star = [m for m in one if all(d.type == "3b" and d.end != "x" for d in m.data)]
        if star and cls.dimension == 0:
            return _shape_c(cls, star[0])
        return _family_d(cls, one, cc)
    if cls.dimension == 0:
        m = members[0]
        if cls.data[m.cell].on_curve:
            return _shape_b(curve, m)
        return _shape_a(curve, m)
    if cls.dimension == 1:
        if cls.bounded:
            return _family_efg(cls, members, cc)
        return _family_h_n(cls, cc)
    if not cls.bounded and any(cls.arrangement.cells[c].dim == 2 and not cls.arrangement.cells[c].bounded
                               for c in cls.cells):
        return _family_t(cls, members, cc)
    return _family_w(cls, members, cc)


# --- one component ---------------------------------------------------------------------

def _shape_ii(cls, members):
    curve = cls.curve
    ref = next(m for m in members if any(d.type == "6b" for d in m.data))
    d6 = next(d for d in ref.data if d.type == "6b")
    edges = [curve.bounded_edges[idx].dual for _v, (kind, idx) in curve.incident(d6.carrier[1]) if kind == "edge"]

    def pred(s):
        return any(tpts(s, e) == frozenset({(0, 0), (1, 3)}) for e in edges)
    return ShapeVerdict("II", _frames(pred), ref, lambda s: {})


def _shape_c(cls, m):
    curve = cls.curve
    vertex = cls.data[m.cell].curve_vertex
    frames = shape_c_frame(curve, vertex)
    if not frames:
        raise NonGenericCurve("the shortest edge at the shape (C) vertex is not unique")

    def params(s):
        i, j, k = shape_c_marks(curve, vertex, s)
        return {"i": i, "j": j, "k": k}
    return ShapeVerdict("C", frames, m, params)


def _degree(cc, node):
    return sum(1 for d in cc.darts if d.tail == node)


def _family_d(cls, one, cc):
    curve = cls.curve
    ref = one[0]
    mid = next(d for d in ref.data if d.end != "x")
    at = next(d for d in ref.data if d.end == "x")
    vtri = _tri(curve, at.carrier[1])
    want_e = frozenset({(1, 0), (1, 1)})
    want_v = frozenset({(1, 0), (1, 1), (2, 2)})

    def pred(s):
        return tpts(s, mid.dual) == want_e and tpts(s, vtri) == want_v
    frames = _frames(pred)
    if not frames:
        raise UnrecognizedShape("one-component class without the representative position")
    i = recipe_vi(curve, mid, frames[0])["i"]
    v_idx = at.carrier[1]
    v0 = next(k for k in curve.bounded_edges[mid.carrier[1]].ends if k != v_idx)
    node_of_vertex = {cls.data[n.cell].curve_vertex: k for k, n in enumerate(cc.nodes) if n.curve_vertex}
    others = [k for k in node_of_vertex if k not in (v_idx, v0)]
    if cls.bounded:
        label = "D"
    elif cls.dimension == 1:
        if i == 0:
            label = "L′"
        elif others:
            label = "P"
        elif v0 in node_of_vertex and _degree(cc, node_of_vertex[v0]) >= 3:
            label = "O"
        else:
            label = "L"
    else:
        if i != 0:
            raise UnrecognizedShape("two-dimensional one-component class with i = 1")
        if not others:
            label = "Q"
        elif len(others) >= 2:
            label = "S"
        elif _degree(cc, node_of_vertex[others[0]]) >= 3:
            label = "R"
        else:
            label = "Q′"
    return ShapeVerdict(label, frames, ref, lambda s: {}, {"i": i})


# --- zero-dimensional, two components ------------------------------------------------------

def _shape_a(curve, m):
    pred = _ends_rule(m.data, [(("3c",), "h"), (("3c",), "v")])

    def params(s):
        hd = next(d for d in m.data if tend(s, d) == "h")
        vd = next(d for d in m.data if tend(s, d) == "v")
        return {**recipe_vi(curve, hd, s), **recipe_uj(curve, vd, s)}
    return ShapeVerdict("A", _frames(pred), m, params)


def _shape_b(curve, m):
    pred = _ends_rule(m.data, [(("3c",), "h"), (("3a",), "v")])

    def params(s):
        hd = next(d for d in m.data if d.type == "3c")
        vd = next(d for d in m.data if d.type == "3a")
        return {**recipe_vi(curve, hd, s), "j": recipe_uj(curve, vd, s)["j"]}
    return ShapeVerdict("B", _frames(pred), m, params)


# --- one-dimensional ------------------------------------------------------------------------

def _interior_member(cls, members, dim):
    for m in members:
        if m.dim == dim and len(m.data) == 2:
            return m
    raise UnrecognizedShape(f"no {dim}-dimensional member with two tangencies")


def _family_efg(cls, members, cc):
    curve = cls.curve
    ref = _interior_member(cls, members, 1)
    over = next(d for d in ref.data if d.type in ("3a", "3c"))
    point = next(d for d in ref.data if d is not over)
    if over.type == "3a":
        label = "G"
    elif any(d.type == "4" for n in cc.nodes for d in n.tangencies):
        label = "F"
    else:
        label = "E"

    def pred(s):
        if tend(s, over) != "h" or tend(s, point) != "d":
            return False
        e = tpts(s, _edge_dual(curve, point))
        if label == "G":
            return (1, 0) in tpts(s, over.dual) and any(p[0] + p[1] == DEGREE for p in e)
        return (2, 0) in e

    def params(s):
        out = recipe_vi(curve, over, s)
        if label == "G":
            out.update(recipe_k(curve, point, s))
        return out
    return ShapeVerdict(label, _frames(pred), ref, params)


def _family_h_n(cls, cc):
    curve = cls.curve
    leaves = [d for d in cc.darts if d.head < 0]
    if len(leaves) != 1:
        raise UnrecognizedShape(f"unbounded one-dimensional class with {len(leaves)} rays")
    node = cc.nodes[leaves[0].tail]
    data = node.tangencies
    ref = Member(node.cell, 0, cls.arrangement.cells[node.cell].sample, data)
    vdat = [d for d in data if d.type in ("4", "6a") or (d.type == "3b")]
    pdat = [d for d in data if d.type in ("1", "2", "3c")]
    if len(vdat) != 1 or len(pdat) != 1:
        raise UnrecognizedShape("ray tail without a vertex tangency and a partner")
    vd, pd = vdat[0], pdat[0]
    vt, pt = vd.type, pd.type
    every = [d for m in _members(cls) for d in m.data]
    if vt == "4" and pt == "3c":
        label = "H"
    elif vt == "6a" and pt == "3c":
        label = "H′"
    elif vt == "3b" and pt == "1":
        label = "N"
    elif vt == "3b" and pt == "2":
        label = "I"
    elif vt == "3b" and pt == "3c":
        label = "M" if any(d.type == "5a" for d in every) else "J"
    elif vt == "6a" and pt == "2":
        label = "K"
    else:
        raise UnrecognizedShape(f"ray tail with tangency types ({vt}), ({pt})")
    vertex = None
    if vd.carrier[0] == "vertex":
        vertex = vd.carrier[1]
    elif vt == "3b":
        vertex = cls.data[node.cell].curve_vertex
    vtri = _tri(curve, vertex) if vertex is not None else None

    def pred(s):
        if label in ("H", "H′", "M", "J"):
            if tend(s, pd) != "h":
                return False
            if label == "H":
                return tpts(s, vd.dual) == frozenset({(4, 0), (2, 1)})
            if label == "H′":
                return tpts(s, vtri) == frozenset({(4, 0), (3, 0), (2, 1)})
            return (4, 0) in tpts(s, vtri)
        if tend(s, pd) != "d":
            return False
        if label == "K":
            return tpts(s, vtri) == frozenset({(0, 0), (1, 1), (1, 0)})
        return tpts(s, vtri) == frozenset({(0, 0), (1, 0), (0, 1)})

    def params(s):
        if label in ("H", "H′", "M", "J"):
            return recipe_vi(curve, pd, s)
        return recipe_k(curve, pd, s)
    return ShapeVerdict(label, _frames(pred), ref, params)


# --- two-dimensional ------------------------------------------------------------------------

# types of the non-(2) tangencies of the two weighted members -> name
T_NAMES = {
    ("4", "4"): "T",
    ("4", "6a"): "T′",
    ("6a", "6a"): "T″",
    ("3a", "4"): "U",
    ("3a", "6a"): "U′",
    ("3a", "3a"): "V",
}


def _family_t(cls, members, cc):
    curve = cls.curve
    arr = cls.arrangement
    ref = None
    for m in members:
        cell = arr.cells[m.cell]
        if m.dim == 2 and not cell.bounded and len(m.data) == 2 and m.data[0].end == m.data[1].end:
            ref = m
            break
    if ref is None:
        raise UnrecognizedShape("unbounded two-cell without two tangencies in one end")

    def far(s):
        return [d for d in ref.data if any(p[0] + p[1] == DEGREE for p in tpts(s, _edge_dual(curve, d)))]

    def pred(s):
        return all(tend(s, d) == "d" for d in ref.data) and len(far(s)) == 1
    weighted = [m for m in members if member_weight(m.data) == 2]
    key = []
    for m in weighted:
        other = [d.type for d in m.data if d.type != "2"]
        if len(other) != 1 or len(m.data) != 2:
            raise UnrecognizedShape("unbounded two-cell class with an unexpected weighted member")
        key.append(other[0])
    label = T_NAMES.get(tuple(sorted(key)))
    if label is None:
        raise UnrecognizedShape(f"unbounded two-cell class with weighted members {sorted(key)}")
    return ShapeVerdict(label, _frames(pred), ref, lambda s: recipe_k(curve, far(s)[0], s))


W_TABLE = {
    1: {1: "W", 2: "X", 3: "Y", 4: "GG", 5: "EE"},
    2: {1: "X", 2: "Z", 3: "AA", 4: "HH", 5: "FF"},
    3: {1: "Y", 2: "AA", 3: "BB", 4: "DD", 5: "CC"},
}


def _parallelogram_case(e, e_prime):
    """Cases of the two tangency edges relative to the parallelogram they span.

    ``e`` carries the tangency in the horizontal end and ``e_prime`` the one in
    the diagonal end, both given by their endpoints in the representative
    frame.  Returns ``(case of e, case of e_prime, slanted >= horizontal)``.
    """
    v1, v2 = sorted(e, key=lambda p: p[1])
    v4, v3 = sorted(e_prime, key=lambda p: p[1])
    ylo, yhi = v1[1], v2[1]
    c3, c4 = v3[1] - v3[0], v4[1] - v4[0]
    clo, chi = min(c3, c4), max(c3, c4)

    def c(p):
        return p[1] - p[0]

    def inside(p):
        return ylo <= p[1] <= yhi and clo <= c(p) <= chi

    def meets(a, b):
        """Parameter range of the segment ab inside the parallelogram."""
        lo, hi = 0, 1
        for fa, fb, bmin, bmax in ((a[1], b[1], ylo, yhi), (c(a), c(b), clo, chi)):
            if fa == fb:
                if not bmin <= fa <= bmax:
                    return None
                continue
            t1, t2 = sorted(((bmin - fa) / (fb - fa), (bmax - fa) / (fb - fa)))
            lo, hi = max(lo, t1), min(hi, t2)
            if lo > hi:
                return None
        return lo, hi

    def corner(p):
        return p[1] in (ylo, yhi) and c(p) in (clo, chi)

    def case_of(vj, other):
        hit = meets(vj, other)
        if hit is None:
            return 1
        segment = hit[1] > hit[0]
        if inside(vj):
            if corner(vj):
                return 4 if segment else 2
            return 3
        return 5

    ce = case_of(v1, v2)
    cp = case_of(v3, v4)
    return ce, cp, (yhi - ylo) >= (chi - clo)


def _family_w(cls, members, cc):
    curve = cls.curve
    ref = _interior_member(cls, members, 2)
    if ref.data[0].end == ref.data[1].end:
        raise UnrecognizedShape("bounded two-cell with both tangencies in one end")

    def geometry(s):
        hd = next(d for d in ref.data if tend(s, d) == "h")
        dd = next(d for d in ref.data if tend(s, d) == "d")
        pts = []
        for d in (hd, dd):
            a, b = curve.bounded_edges[d.carrier[1]].ends
            pts.append([apply_s3_plane(s, curve.point(a)), apply_s3_plane(s, curve.point(b))])
        return _parallelogram_case(pts[0], pts[1])

    def chamber_ok(s):
        ends = {tend(s, d) for d in ref.data}
        if ends != {"h", "d"}:
            return False
        return geometry(s)[2]

    frames = _frames(chamber_ok)
    if not frames:
        raise UnrecognizedShape("bounded two-dimensional class without the representative position")
    ce, cp, _ok = geometry(frames[0])
    if cp not in W_TABLE or ce not in W_TABLE[cp]:
        raise UnrecognizedShape(f"parallelogram cases ({cp}, {ce}) outside the table")
    return ShapeVerdict(W_TABLE[cp][ce], frames, ref, lambda s: {}, {"cases": (cp, ce)})
