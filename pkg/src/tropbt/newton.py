"""Regular subdivision, the dual tropical curve, and its skeleton.

Conventions: the tropicalization uses the max convention, so the curve is the
corner locus of ``max(-val(a_ij) + i X + j Y)`` and its vertices are dual to
the lower faces of the lifted simplex.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .errors import NotSmooth
from .quartic import DEGREE, LATTICE_POINTS, QuarticSpec

Point = tuple  # pair of Fractions or ints
INTERIOR_POINTS = ((1, 1), (1, 2), (2, 1))


def _det(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def primitive(v) -> tuple[int, int]:
    """Primitive integer vector in the direction of an integral or rational ``v``."""
    x, y = Fraction(v[0]), Fraction(v[1])
    den = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    xi, yi = int(x * den), int(y * den)
    g = gcd(xi, yi)
    if g == 0:
        raise ValueError("zero vector has no direction")
    return (xi // g, yi // g)


def _boundary_side(p, q):
    """Which side of the simplex contains the segment pq, or None."""
    if p[1] == 0 and q[1] == 0:
        return "bottom"
    if p[0] == 0 and q[0] == 0:
        return "left"
    if p[0] + p[1] == DEGREE and q[0] + q[1] == DEGREE:
        return "diagonal"
    return None


RAY_DIRECTION = {"bottom": (0, -1), "left": (-1, 0), "diagonal": (1, 1)}


@dataclass
class DualSubdivision:
    cells: list  # sorted tuples of lattice points, one per lower face
    triangles: list = field(default_factory=list)
    interior_edges: list = field(default_factory=list)  # (edge, (tri_a, tri_b))
    boundary_edges: list = field(default_factory=list)  # (edge, tri)

    @property
    def points_used(self) -> set:
        return {p for c in self.cells for p in c}


def _lower_planes(heights):
    """All non-vertical affine functions through three lifted points that stay
    below every lifted point; returned as exact coefficient triples."""
    pts = LATTICE_POINTS
    planes = {}
    for a, b, c in combinations(pts, 3):
        d = _det(_sub(b, a), _sub(c, a))
        if d == 0:
            continue
        # h = alpha*i + beta*j + gamma through the three lifted points
        ha, hb, hc = heights[a], heights[b], heights[c]
        alpha = Fraction((hb - ha) * (c[1] - a[1]) - (hc - ha) * (b[1] - a[1]), d)
        beta = Fraction((hc - ha) * (b[0] - a[0]) - (hb - ha) * (c[0] - a[0]), d)
        gamma = ha - alpha * a[0] - beta * a[1]
        key = (alpha, beta, gamma)
        if key in planes:
            continue
        if all(heights[p] >= alpha * p[0] + beta * p[1] + gamma for p in pts):
            planes[key] = tuple(sorted(p for p in pts if heights[p] == alpha * p[0] + beta * p[1] + gamma))
    return planes


def regular_subdivision(spec: QuarticSpec) -> DualSubdivision:
    heights = spec.heights()
    cells = sorted(set(_lower_planes(heights).values()))
    sub = DualSubdivision(cells=cells)
    if not all(len(c) == 3 and abs(_det(_sub(c[1], c[0]), _sub(c[2], c[0]))) == 1 for c in cells):
        return sub
    sub.triangles = list(cells)
    owners = defaultdict(list)
    for t in sub.triangles:
        for e in combinations(t, 2):
            owners[e].append(t)
    for e in sorted(owners):
        ts = owners[e]
        if len(ts) == 2:
            sub.interior_edges.append((e, (ts[0], ts[1])))
        else:
            sub.boundary_edges.append((e, ts[0]))
    return sub


def is_smooth(sub: DualSubdivision) -> bool:
    return len(sub.triangles) == DEGREE * DEGREE and len(sub.cells) == DEGREE * DEGREE


@dataclass(frozen=True)
class CurveEdge:
    ends: tuple[int, int]          # vertex indices, direction points from ends[0] to ends[1]
    direction: tuple[int, int]     # primitive
    length: Fraction               # lattice length
    dual: tuple                    # interior dual edge (pair of lattice points)


@dataclass(frozen=True)
class CurveRay:
    vertex: int
    direction: tuple[int, int]
    dual: tuple


@dataclass
class TropicalCurve:
    vertices: list                 # list of (point, dual triangle)
    bounded_edges: list            # list of CurveEdge
    rays: list                     # list of CurveRay
    spec: QuarticSpec | None = None
    subdivision: DualSubdivision | None = None

    def point(self, k: int):
        return self.vertices[k][0]

    def incident(self, k: int):
        """Outgoing primitive directions at vertex k with the piece they belong to."""
        out = []
        for idx, e in enumerate(self.bounded_edges):
            if e.ends[0] == k:
                out.append((e.direction, ("edge", idx)))
            elif e.ends[1] == k:
                out.append(((-e.direction[0], -e.direction[1]), ("edge", idx)))
        for idx, r in enumerate(self.rays):
            if r.vertex == k:
                out.append((r.direction, ("ray", idx)))
        return out

    def vertex_index(self, p) -> int | None:
        for k, (q, _t) in enumerate(self.vertices):
            if q == p:
                return k
        return None

    def region_of_dual_point(self, lattice_point):
        """Bounded edges of the cycle surrounding an interior lattice point."""
        return [idx for idx, e in enumerate(self.bounded_edges) if lattice_point in e.dual]


def _vertex_of_triangle(heights, tri):
    (i0, j0), (i1, j1), (i2, j2) = tri
    h0, h1, h2 = heights[tri[0]], heights[tri[1]], heights[tri[2]]
    # -h0 + i0 X + j0 Y = -h1 + i1 X + j1 Y = -h2 + i2 X + j2 Y
    a11, a12, b1 = i1 - i0, j1 - j0, h1 - h0
    a21, a22, b2 = i2 - i0, j2 - j0, h2 - h0
    d = a11 * a22 - a12 * a21
    x = Fraction(b1 * a22 - a12 * b2, d)
    y = Fraction(a11 * b2 - b1 * a21, d)
    return (x, y)


def dual_curve(spec: QuarticSpec, sub: DualSubdivision | None = None) -> TropicalCurve:
    if sub is None:
        sub = regular_subdivision(spec)
    if not is_smooth(sub):
        raise NotSmooth("the regular subdivision is not a unimodular triangulation")
    heights = spec.heights()
    tri_index = {t: k for k, t in enumerate(sub.triangles)}
    vertices = [(_vertex_of_triangle(heights, t), t) for t in sub.triangles]
    edges = []
    for e, (ta, tb) in sub.interior_edges:
        ka, kb = tri_index[ta], tri_index[tb]
        pa, pb = vertices[ka][0], vertices[kb][0]
        v = _sub(pb, pa)
        d = primitive(v)
        length = v[0] / d[0] if d[0] != 0 else v[1] / d[1]
        edges.append(CurveEdge((ka, kb), d, Fraction(length), e))
    rays = []
    for e, t in sub.boundary_edges:
        rays.append(CurveRay(tri_index[t], RAY_DIRECTION[_boundary_side(*e)], e))
    return TropicalCurve(vertices, edges, rays, spec, sub)


def curve_from_spec(spec: QuarticSpec) -> TropicalCurve:
    return dual_curve(spec, regular_subdivision(spec))


# --- skeleton ----------------------------------------------------------------

@dataclass
class SkeletonEdge:
    ends: tuple[int, int]          # skeleton node ids (curve vertex indices)
    length: Fraction
    chain: list                    # curve edge pieces as (edge index, forward?) from ends[0]


@dataclass
class MetricGraph:
    nodes: list                    # curve vertex indices that are skeleton nodes
    edges: list                    # SkeletonEdge
    loops_dual: dict = field(default_factory=dict)   # interior point -> (cycle edge ids, length)
    type_triple: tuple = (0, 0, 0)
    attach: dict = field(default_factory=dict)       # curve vertex -> skeleton location

    @property
    def betti(self) -> int:
        comps = _components(self.nodes, [e.ends for e in self.edges])
        return len(self.edges) - len(self.nodes) + comps


def _components(nodes, pairs):
    parent = {n: n for n in nodes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in pairs:
        parent[find(a)] = find(b)
    return len({find(n) for n in nodes})


def skeleton(curve: TropicalCurve) -> MetricGraph:
    n = len(curve.vertices)
    alive = set(range(len(curve.bounded_edges)))
    adj = defaultdict(set)
    for idx in alive:
        a, b = curve.bounded_edges[idx].ends
        adj[a].add(idx)
        adj[b].add(idx)
    # prune leaves; remember where each pruned vertex hangs
    hang = {}
    changed = True
    while changed:
        changed = False
        for v in range(n):
            if v in hang:
                continue
            live = [e for e in adj[v] if e in alive]
            if len(live) == 1:
                e = live[0]
                a, b = curve.bounded_edges[e].ends
                hang[v] = b if a == v else a
                alive.discard(e)
                changed = True
            elif len(live) == 0:
                hang.setdefault(v, None)
    deg = {v: len([e for e in adj[v] if e in alive]) for v in range(n) if v not in hang}
    nodes = sorted(v for v, d in deg.items() if d >= 3)
    node_set = set(nodes)
    used = set()
    sk_edges = []
    for start in nodes:
        for e0 in sorted(adj[start]):
            if e0 not in alive or e0 in used:
                continue
            chain, length, cur, e = [], Fraction(0), start, e0
            while True:
                used.add(e)
                a, b = curve.bounded_edges[e].ends
                forward = a == cur
                chain.append((e, forward))
                length += curve.bounded_edges[e].length
                cur = b if forward else a
                if cur in node_set:
                    break
                nxt = [f for f in adj[cur] if f in alive and f not in used]
                e = nxt[0]
            sk_edges.append(SkeletonEdge((start, cur), length, chain))
    g = MetricGraph(nodes, sk_edges)
    # locate every curve vertex on the skeleton
    edge_pos = {}
    for sid, se in enumerate(sk_edges):
        off = Fraction(0)
        for e, forward in se.chain:
            a, b = curve.bounded_edges[e].ends
            first = a if forward else b
            edge_pos.setdefault(first, (sid, off))
            off += curve.bounded_edges[e].length
    for v in range(n):
        root = v
        while root in hang and hang[root] is not None:
            root = hang[root]
        if root in node_set:
            g.attach[v] = ("node", root)
        else:
            g.attach[v] = ("edge",) + edge_pos[root]
    for p in INTERIOR_POINTS:
        cyc_curve_edges = set(curve.region_of_dual_point(p))
        ids = [sid for sid, se in enumerate(sk_edges) if all(e in cyc_curve_edges for e, _f in se.chain)]
        g.loops_dual[p] = (ids, sum((sk_edges[s].length for s in ids), Fraction(0)))
    g.type_triple = _type_triple(nodes, sk_edges)
    return g


def _type_triple(nodes, edges):
    loops = sum(1 for e in edges if e.ends[0] == e.ends[1])
    pair_count = defaultdict(int)
    for e in edges:
        if e.ends[0] != e.ends[1]:
            pair_count[tuple(sorted(e.ends))] += 1
    biedges = sum(1 for c in pair_count.values() if c == 2)
    bridges = 0
    base = _components(nodes, [e.ends for e in edges])
    for k in range(len(edges)):
        rest = [e.ends for m, e in enumerate(edges) if m != k]
        if _components(nodes, rest) > base:
            bridges += 1
    return (loops, biedges, bridges)
