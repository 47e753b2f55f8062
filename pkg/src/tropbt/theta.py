"""Theta characteristics of the skeleton and the match with bitangent classes.

Points of a metric graph are ``("node", v)`` or ``("edge", sid, t)`` with
``0 < t < length``; divisors are Counters of points.  Effective theta
characteristics come from Zharkov's construction: ignite a cycle and let the
fire spread at unit speed.  If ``f`` is the distance to the cycle, then
``D = (K - div f) / 2`` is effective, and ``2D`` is equivalent to the
canonical divisor ``K``.  Concretely, a point reached by ``k >= 2`` fronts at
once carries ``k - 1`` chips and a point of the cycle where it crosses
itself carries ``(deg - 2) / 2``.

Linear equivalence is decided by comparing q-reduced divisors, computed by
Dhar's burning algorithm on metric graphs: burn from ``q``, and while some
closed set survives, fire it by the largest step that keeps every moving chip
on its segment.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BijectionFailure, DegreeMismatch
from .newton import INTERIOR_POINTS, MetricGraph, TropicalCurve

LOOP_NAMES = {(1, 2): "γ1", (1, 1): "γ2", (2, 1): "γ3"}


@dataclass(frozen=True)
class CycleClass:
    edges: frozenset              # skeleton edge ids of the even subgraph
    name: str = ""


Divisor = Counter


def degree(d: Divisor) -> int:
    return sum(d.values())


def normalize_point(g: MetricGraph, p):
    if p[0] == "node":
        return p
    _tag, sid, t = p
    e = g.edges[sid]
    if t == 0:
        return ("node", e.ends[0])
    if t == e.length:
        return ("node", e.ends[1])
    if not 0 < t < e.length:
        raise ValueError(f"offset {t} outside edge {sid}")
    return ("edge", sid, Fraction(t))


def divisor(g: MetricGraph, chips) -> Divisor:
    out = Counter()
    for p, m in chips:
        out[normalize_point(g, p)] += m
    return Counter({p: m for p, m in out.items() if m})


# --- cycle classes ------------------------------------------------------------

def _fundamental_cycles(g: MetricGraph) -> list[frozenset]:
    parent = {n: n for n in g.nodes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree, extra = [], []
    for sid, e in enumerate(g.edges):
        a, b = find(e.ends[0]), find(e.ends[1])
        if a == b:
            extra.append(sid)
        else:
            parent[a] = b
            tree.append(sid)
    adj = {n: [] for n in g.nodes}
    for sid in tree:
        a, b = g.edges[sid].ends
        adj[a].append((b, sid))
        adj[b].append((a, sid))

    def path(u, w):
        prev = {u: None}
        stack = [u]
        while stack:
            x = stack.pop()
            for y, sid in adj[x]:
                if y not in prev:
                    prev[y] = (x, sid)
                    stack.append(y)
        out = set()
        while w != u:
            x, sid = prev[w]
            out.add(sid)
            w = x
        return out

    cycles = []
    for sid in extra:
        a, b = g.edges[sid].ends
        cycles.append(frozenset(path(a, b) | {sid}))
    return cycles


def cycle_classes(g: MetricGraph) -> list[CycleClass]:
    """All nonzero elements of the cycle space over Z/2.

    Each element is its own unique even subgraph.  When the graph comes from
    a plane quartic the basis is the boundary cycles of the regions dual to
    the interior lattice points, named as in ``LOOP_NAMES``.
    """
    names = []
    if g.loops_dual and all(ids for ids, _l in g.loops_dual.values()):
        basis = [frozenset(g.loops_dual[p][0]) for p in sorted(g.loops_dual, key=lambda p: LOOP_NAMES[p])]
        names = [LOOP_NAMES[p][1:] for p in sorted(g.loops_dual, key=lambda p: LOOP_NAMES[p])]
    else:
        basis = _fundamental_cycles(g)
        names = [str(k + 1) for k in range(len(basis))]
    out = []
    for r in range(1, len(basis) + 1):
        for subset in combinations(range(len(basis)), r):
            edges = frozenset()
            for k in subset:
                edges = edges ^ basis[k]
            out.append(CycleClass(edges, "γ" + "".join(names[k] for k in subset)))
    return out


# --- Zharkov's construction -----------------------------------------------------

def _burn_times(g: MetricGraph, ignited_edges) -> dict:
    """Arrival time of the fire at every node (Dijkstra over burn events)."""
    inf = None
    time = {n: inf for n in g.nodes}
    heap = []
    for sid in ignited_edges:
        for v in g.edges[sid].ends:
            if time[v] != 0:
                time[v] = Fraction(0)
                heapq.heappush(heap, (Fraction(0), v))
    done = set()
    while heap:
        t, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        for sid, e in enumerate(g.edges):
            if sid in ignited_edges or v not in e.ends:
                continue
            w = e.ends[1] if e.ends[0] == v else e.ends[0]
            nt = t + e.length
            if time[w] is None or nt < time[w]:
                time[w] = nt
                heapq.heappush(heap, (nt, w))
    return time


def zharkov_theta(g: MetricGraph, gamma: CycleClass) -> Divisor:
    ignited = set(gamma.edges)
    time = _burn_times(g, ignited)
    chips = Counter()
    arrivals = Counter()
    for sid, e in enumerate(g.edges):
        if sid in ignited:
            continue
        a, b = e.ends
        ta, tb = time[a], time[b]
        if a == b:
            # a loop off the cycle: both fronts enter and meet at its middle
            chips[("edge", sid, e.length / 2)] += 1
            continue
        meet = (tb + e.length - ta) / 2       # offset from a where the fronts meet
        if 0 < meet < e.length:
            chips[("edge", sid, meet)] += 1
        elif meet <= 0:
            arrivals[a] += 1                  # fire runs from b into a
        else:
            arrivals[b] += 1
    for v, k in arrivals.items():
        if k >= 2:
            chips[("node", v)] += k - 1
    deg_gamma = Counter()
    for sid in ignited:
        a, b = g.edges[sid].ends
        deg_gamma[a] += 1
        deg_gamma[b] += 1
    for v, d in deg_gamma.items():
        if d > 2:
            chips[("node", v)] += (d - 2) // 2
    return divisor(g, chips.items())


def theta_characteristics(g: MetricGraph) -> dict:
    return {c.name: zharkov_theta(g, c) for c in cycle_classes(g)}


# --- reduced divisors -------------------------------------------------------------

def base_point(g: MetricGraph, curve: TropicalCurve | None = None):
    if curve is not None:
        return ("node", min(g.nodes, key=lambda v: curve.point(v)))
    return ("node", min(g.nodes))


def _segments(g: MetricGraph, sites):
    """Split every edge at the sites lying on it."""
    segs = []
    for sid, e in enumerate(g.edges):
        cuts = sorted(p[2] for p in sites if p[0] == "edge" and p[1] == sid)
        offs = [Fraction(0)] + cuts + [e.length]
        for k in range(len(offs) - 1):
            segs.append((normalize_point(g, ("edge", sid, offs[k])), normalize_point(g, ("edge", sid, offs[k + 1])),
                         sid, offs[k], offs[k + 1]))
    return segs


def reduce_divisor(g: MetricGraph, d: Divisor, q) -> Divisor:
    """The q-reduced divisor equivalent to d (d effective away from q)."""
    d = Counter(d)
    q = normalize_point(g, q)
    if any(m < 0 for p, m in d.items() if p != q):
        raise ValueError("divisor must be effective away from the base point")
    while True:
        sites = set(d) | {q} | {("node", n) for n in g.nodes}
        segs = _segments(g, sites)
        burnt = {q}
        changed = True
        while changed:
            changed = False
            for s in sites:
                if s in burnt:
                    continue
                fire = sum(1 for a, b, *_r in segs if a != b and ((a == s and b in burnt) or (b == s and a in burnt)))
                if fire > d.get(s, 0):
                    burnt.add(s)
                    changed = True
        if len(burnt) == len(sites):
            return Counter({p: m for p, m in d.items() if m})
        moves = []
        for a, b, sid, lo, hi in segs:
            if a == b:
                continue
            if a not in burnt and b in burnt:
                moves.append((a, sid, lo, 1, hi - lo))
            elif b not in burnt and a in burnt:
                moves.append((b, sid, hi, -1, hi - lo))
        eps = min(m[4] for m in moves)
        for src, sid, start, sgn, _length in moves:
            d[src] -= 1
            d[normalize_point(g, ("edge", sid, start + sgn * eps))] += 1
        d = Counter({p: m for p, m in d.items() if m})


def linearly_equivalent(g: MetricGraph, d1: Divisor, d2: Divisor, q=None) -> bool:
    if degree(d1) != degree(d2):
        raise DegreeMismatch(f"degrees {degree(d1)} and {degree(d2)} differ")
    if q is None:
        q = base_point(g)
    return reduce_divisor(g, d1, q) == reduce_divisor(g, d2, q)


# --- classes versus characteristics ---------------------------------------------

def retract(curve: TropicalCurve, g: MetricGraph, pt):
    """The skeleton point a point of the curve retracts to."""
    k = curve.vertex_index(pt)
    if k is not None:
        return _attach_point(g, k)
    for sid, se in enumerate(g.edges):
        off = Fraction(0)
        for e, forward in se.chain:
            edge = curve.bounded_edges[e]
            a, b = edge.ends
            start = curve.point(a if forward else b)
            d = edge.direction if forward else (-edge.direction[0], -edge.direction[1])
            rel = (pt[0] - start[0], pt[1] - start[1])
            if rel[0] * d[1] - rel[1] * d[0] == 0:
                s = rel[0] / d[0] if d[0] else rel[1] / d[1]
                if 0 < s < edge.length:
                    return normalize_point(g, ("edge", sid, off + s))
            off += edge.length
    for edge in curve.bounded_edges:
        a, b = edge.ends
        pa, pb = curve.point(a), curve.point(b)
        rel = (pt[0] - pa[0], pt[1] - pa[1])
        d = (pb[0] - pa[0], pb[1] - pa[1])
        if rel[0] * d[1] - rel[1] * d[0] == 0:
            s = rel[0] / d[0] if d[0] else rel[1] / d[1]
            if 0 < s < 1:
                return _attach_point(g, a)
    for ray in curve.rays:
        pa = curve.point(ray.vertex)
        rel = (pt[0] - pa[0], pt[1] - pa[1])
        d = ray.direction
        if rel[0] * d[1] - rel[1] * d[0] == 0 and rel[0] * d[0] + rel[1] * d[1] > 0:
            return _attach_point(g, ray.vertex)
    raise ValueError(f"{pt} is not on the curve")


def _attach_point(g: MetricGraph, v):
    loc = g.attach[v]
    if loc[0] == "node":
        return ("node", loc[1])
    return normalize_point(g, ("edge", loc[1], loc[2]))


def tangency_divisor(cls, g: MetricGraph) -> Divisor:
    """P + P' of a member of positive weight, retracted to the skeleton."""
    from .lifting import member_weight

    for c in cls.cells:
        data = cls.data[c].tangencies
        if member_weight(data) > 0:
            chips = Counter()
            for t in data:
                chips[retract(cls.curve, g, t.location)] += t.mult // 2
            return Counter({p: m for p, m in chips.items() if m})
    raise BijectionFailure("class has no member of positive weight")


@dataclass
class ThetaMatch:
    pairs: dict                    # class index -> cycle class name
    thetas: dict                   # cycle class name -> divisor


def class_theta_bijection(classes, curve: TropicalCurve, g: MetricGraph) -> ThetaMatch:
    thetas = theta_characteristics(g)
    q = base_point(g, curve)
    reduced = {name: reduce_divisor(g, d, q) for name, d in thetas.items()}
    pairs = {}
    for k, cls in enumerate(classes):
        red = reduce_divisor(g, tangency_divisor(cls, g), q)
        hits = [name for name, r in reduced.items() if r == red]
        if len(hits) != 1:
            raise BijectionFailure(f"class {k} matches {len(hits)} theta characteristics")
        pairs[k] = hits[0]
    if len(set(pairs.values())) != len(pairs) or len(pairs) != len(thetas):
        raise BijectionFailure("classes and theta characteristics are not in bijection")
    return ThetaMatch(pairs, thetas)
