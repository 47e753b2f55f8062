"""Shape signatures, the shape catalog and canonicalization.

A class is a union of arrangement cells, far finer than its shape.  The
signature coarsens it to a plane graph: *nodes* are the 0-cells where
something changes (a vertex of the curve, a member of positive weight, a
change of colour or tangency data, a corner, a branch point, an isolated
point), *darts* are maximal chains of kept 1-cells between nodes, and
*regions* are the 2-dimensional pieces glued across 1-cells interior to them.
Rays of the class end at a leaf node at infinity.

The code of a plane graph is the lexicographically smallest BFS encoding over
all starting darts, where the neighbours of a node are visited in
counterclockwise order.  Everything in it is combinatorial (directions,
colours, tangency data, region recession), so it is invariant under
translation and under changes of edge lengths.  Applying an element of S3
maps directions and end names and reverses orientation for odd elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .intersect import END_DIRS, det
from .lifting import complex_mults, end_image
from .quartic import IDENTITY, S3_ELEMENTS, S3Element, apply_s3_direction

INF = "inf"


def _primitive(v):
    from math import gcd

    num = [Fraction(c) for c in v]
    den = 1
    for c in num:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in num]
    g = gcd(*ints)
    return (ints[0] // g, ints[1] // g)


def _tk(tangencies, sigma: S3Element):
    return tuple(sorted((t.type, t.mult, t.end if t.end == "x" else end_image(sigma, t.end))
                        for t in tangencies))


@dataclass
class CoarseDart:
    tail: int
    head: int                      # node index or -1-k for the k-th leaf at infinity
    direction: tuple               # primitive direction leaving the tail
    on_curve: bool
    tangencies: list               # TangencyDatum of a representative 1-cell
    sides: tuple                   # (left region, right region), None outside the 2-dim part


@dataclass
class CoarseNode:
    cell: int
    on_curve: bool
    curve_vertex: bool
    weight: int
    tangencies: list


@dataclass
class CoarseRegion:
    cells: list
    recession: tuple
    isolated: list                 # node indices of nodes with no dart, inside the region


@dataclass
class CoarseClass:
    nodes: list
    darts: list
    regions: list
    leaves: int

    def out_darts(self, node):
        return [k for k, d in enumerate(self.darts) if d.tail == node]


def coarsen(cls, weights: dict | None = None) -> CoarseClass:
    """Plane graph of a class with nodes, darts and regions."""
    if weights is None:
        weights = complex_mults(cls)
    arr = cls.arrangement
    have = set(cls.cells)
    faces = [c for c in cls.cells if arr.cells[c].dim == 2]
    one = [c for c in cls.cells if arr.cells[c].dim == 1]
    zero = [c for c in cls.cells if arr.cells[c].dim == 0]
    data = cls.data

    def interior_1(c):
        cell = arr.cells[c]
        return not data[c].on_curve and len(cell.faces) == 2 and all(f in have for f in cell.faces)

    kept = [c for c in one if not interior_1(c)]
    kept_set = set(kept)
    parent = {f: f for f in faces}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for c in one:
        if c not in kept_set:
            a, b = arr.cells[c].faces
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    region_of_root = {}
    regions = []
    for f in faces:
        r = find(f)
        if r not in region_of_root:
            region_of_root[r] = len(regions)
            regions.append(CoarseRegion([], (), []))
        regions[region_of_root[r]].cells.append(f)
    region_of = {f: region_of_root[find(f)] for f in faces}
    for reg in regions:
        rec = set()
        for f in reg.cells:
            rec.update(arr.cells[f].recession)
        reg.recession = tuple(sorted(_primitive(r) for r in rec))

    incident = {v: [] for v in zero}
    for c in kept:
        for e in arr.cells[c].ends:
            if e is not None:
                incident[e].append(c)

    def dir_from(c, v):
        a, b = arr.cells[c].polygon
        p = arr.cells[v].sample
        other = b if a == p else a
        return _primitive((other[0] - p[0], other[1] - p[1]))

    def essential(v):
        d = data[v]
        if d.curve_vertex is not None or weights.get(arr.cells[v].sample, 0) > 0:
            return True
        inc = incident[v]
        if not inc:
            return not all(f in have for f in arr.cells[v].faces) or d.on_curve
        if len(inc) != 2:
            return True
        a, b = (dir_from(c, v) for c in inc)
        if a != (-b[0], -b[1]):
            return True
        return not (d.on_curve == data[inc[0]].on_curve == data[inc[1]].on_curve)

    node_cells = [v for v in zero if essential(v)]
    node_of = {v: k for k, v in enumerate(node_cells)}
    nodes = [CoarseNode(v, data[v].on_curve, data[v].curve_vertex is not None,
                        weights.get(arr.cells[v].sample, 0), data[v].tangencies) for v in node_cells]

    def side_regions(c, v):
        cell = arr.cells[c]
        dv = dir_from(c, v)
        left = right = None
        for f in cell.faces:
            if f not in have:
                continue
            q = arr.cells[f].sample
            p = cell.sample
            s = det(dv, (q[0] - p[0], q[1] - p[1]))
            if s > 0:
                left = region_of[f]
            else:
                right = region_of[f]
        return (left, right)

    darts = []
    leaves = 0
    for v in node_cells:
        for c in incident[v]:
            direction = dir_from(c, v)
            sides = side_regions(c, v)
            cur, at = c, v
            while True:
                nxt = [e for e in arr.cells[cur].ends if e != at] or [at]
                nxt = nxt[0]
                if nxt is None:
                    head = -1 - leaves
                    leaves += 1
                    break
                if nxt in node_of:
                    head = node_of[nxt]
                    break
                cont = [e for e in incident[nxt] if e != cur]
                at, cur = nxt, cont[0]
            darts.append(CoarseDart(node_of[v], head, direction, data[c].on_curve, data[c].tangencies, sides))
    for k, n in enumerate(nodes):
        if not incident[n.cell] and arr.cells[n.cell].faces and all(f in have for f in arr.cells[n.cell].faces):
            regions[region_of[arr.cells[n.cell].faces[0]]].isolated.append(k)
    return CoarseClass(nodes, darts, regions, leaves)


def _ccw_cmp(a, b):
    ha = 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1
    hb = 0 if (b[1] > 0 or (b[1] == 0 and b[0] > 0)) else 1
    if ha != hb:
        return ha - hb
    c = det(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


class _Transformed:
    """A coarse class seen through an element of S3."""

    def __init__(self, cc: CoarseClass, sigma: S3Element):
        self.cc = cc
        self.sigma = sigma
        m = sigma.matrix
        self.odd = m[0][0] * m[1][1] - m[0][1] * m[1][0] < 0
        self.dirs = [apply_s3_direction(sigma, d.direction) for d in cc.darts]
        self.node_label = [(n.on_curve, n.curve_vertex, n.weight > 0) for n in cc.nodes]
        self.dart_label = [(self.dirs[k], d.on_curve) for k, d in enumerate(cc.darts)]
        self.region_label = [(tuple(sorted(apply_s3_direction(sigma, r) for r in reg.recession)),
                              tuple(sorted(self.node_label[i] for i in reg.isolated)))
                             for reg in cc.regions]
        self.out = {}
        for k, d in enumerate(cc.darts):
            self.out.setdefault(d.tail, []).append(k)
        for v in self.out:
            self.out[v].sort(key=cmp_to_key(lambda a, b: _ccw_cmp(self.dirs[a], self.dirs[b])))
        self.twin = {}
        for k, d in enumerate(cc.darts):
            if d.head >= 0:
                back = (-d.direction[0], -d.direction[1])
                cands = [j for j in self.out[d.head] if cc.darts[j].head == d.tail and cc.darts[j].direction == back]
                self.twin[k] = cands[0]

    def sides(self, k):
        left, right = self.cc.darts[k].sides
        return (right, left) if self.odd else (left, right)

    def code(self, start: int):
        """BFS encoding from a starting dart, visiting darts counterclockwise."""
        cc = self.cc
        node_num, region_num, entry = {}, {}, {}
        queue, out = [], []

        def num_node(v):
            if v < 0:
                return ("inf",)
            if v not in node_num:
                node_num[v] = len(node_num)
                queue.append(v)
                return ("new", self.node_label[v])
            return ("old", node_num[v])

        def num_region(r):
            if r is None:
                return ("none",)
            if r not in region_num:
                region_num[r] = len(region_num)
                return ("new", self.region_label[r])
            return ("old", region_num[r])

        first = cc.darts[start].tail
        entry[first] = start
        out.append(num_node(first))
        seen = set()
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            ds = self.out[v]
            j = ds.index(entry[v])
            for k in ds[j:] + ds[:j]:
                d = cc.darts[k]
                if d.head >= 0 and d.head not in entry:
                    entry[d.head] = self.twin[k]
                left, right = self.sides(k)
                out.append((node_num[v], self.dart_label[k], num_node(d.head), num_region(left), num_region(right)))
                seen.add(k)
        if len(seen) != len(cc.darts):
            raise AssertionError("coarse class graph is not connected")
        return tuple(out), node_num, region_num

    def canonical(self):
        """Smallest code with its node numbering; isolated nodes are numbered last."""
        cc = self.cc
        if not cc.darts:
            if len(cc.nodes) != 1:
                raise AssertionError("class without darts must be a single point")
            return (("point", self.node_label[0]),), {0: 0}
        best = min(self.code(k) for k in range(len(cc.darts)))
        code, nn, rn = best
        nn = dict(nn)
        for r in sorted(rn, key=rn.get):
            for i in sorted(cc.regions[r].isolated, key=lambda i: self.node_label[i]):
                nn[i] = len(nn)
        return code, nn


def canonical_code(cc: CoarseClass, sigma: S3Element):
    return _Transformed(cc, sigma).canonical()


# --- signatures ---------------------------------------------------------------

def signature(cls, sigma: S3Element = IDENTITY, weights: dict | None = None) -> str:
    """Signature string of a class seen through ``sigma``."""
    code, _nn = canonical_code(coarsen(cls, weights), sigma)
    return repr(code).replace(" ", "")


# --- the catalog data file ----------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    label: str
    weights: tuple                 # sorted multiset of member weights
    template: str
    params: tuple
    conditions: tuple              # parsed Inequality objects
    signatures: tuple

    @property
    def unconditional(self) -> bool:
        return not self.conditions


@dataclass(frozen=True)
class Catalog:
    entries: dict
    by_signature: dict

    def __getitem__(self, label: str) -> CatalogEntry:
        return self.entries[label]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.values())


def parse_catalog(text: str) -> Catalog:
    from .signcond import parse_condition

    blocks = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            blocks.append((line[1:-1], []))
            continue
        if not blocks:
            raise ValueError(f"catalog line outside a block: {raw!r}")
        key, _, value = line.partition(":")
        blocks[-1][1].append((key.strip(), value.strip()))
    entries, by_sig = {}, {}
    for label, fields in blocks:
        if label in entries:
            raise ValueError(f"catalog label {label!r} appears twice")
        one = {k: v for k, v in fields if k not in ("condition", "signature")}
        conds = tuple(parse_condition(v) for k, v in fields if k == "condition")
        sigs = tuple(v for k, v in fields if k == "signature")
        params = tuple(one.get("params", "").split())
        used = set().union(*(c.params() for c in conds)) if conds else set()
        if used != set(params):
            raise ValueError(f"catalog entry {label!r}: declared params {params} but conditions use {sorted(used)}")
        entry = CatalogEntry(label, tuple(sorted(int(w) for w in one["weights"].split())),
                             one["template"], params, conds, sigs)
        for s in sigs:
            if s in by_sig:
                raise ValueError(f"signature listed under {by_sig[s]!r} and {label!r}")
            by_sig[s] = label
        entries[label] = entry
    return Catalog(entries, by_sig)


_CATALOG = None


def load_catalog() -> Catalog:
    global _CATALOG
    if _CATALOG is None:
        from importlib.resources import files

        _CATALOG = parse_catalog(files("tropbt").joinpath("data/catalog.txt").read_text(encoding="utf-8"))
    return _CATALOG


def weights(label: str) -> tuple:
    """Multiset of member weights of a catalog shape."""
    return load_catalog()[label].weights


# --- canonicalization -------------------------------------------------------------------

@dataclass(frozen=True)
class Canonical:
    label: str
    sigma: S3Element
    signature: str
    verdict: object
    weights: dict                  # point -> complex multiplicity


def canonicalize(cls, strict: bool = True) -> Canonical:
    """Catalog label of a class and the element of S3 moving it to the representative.

    The structural rules name the shape and fix the representative frame (the
    first admissible element in word order); the signature of the class in
    that frame must be listed under the same label.  With ``strict`` false an
    unlisted signature is accepted as long as the rules name a catalog shape.
    """
    from .errors import UnrecognizedShape, WeightMismatch
    from .shapes import classify

    cat = load_catalog()
    w = complex_mults(cls)
    verdict = classify(cls, w)
    if verdict.label not in cat.entries:
        raise UnrecognizedShape(f"rules produced {verdict.label!r}, which is not a catalog label")
    sigma = verdict.sigma
    sig = signature(cls, sigma, w)
    listed = cat.by_signature.get(sig)
    if listed is None and strict:
        raise UnrecognizedShape(f"signature of a class named {verdict.label!r} is not in the catalog")
    if listed is not None and listed != verdict.label:
        raise UnrecognizedShape(f"signature listed under {listed!r} but the rules say {verdict.label!r}")
    if tuple(sorted(w.values())) != cat[verdict.label].weights:
        raise WeightMismatch(f"{verdict.label}: computed weights {sorted(w.values())}, "
                             f"catalog {list(cat[verdict.label].weights)}")
    return Canonical(verdict.label, sigma, sig, verdict, w)
