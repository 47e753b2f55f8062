"""Random smooth quartics for population tests.

Heights start from a strictly convex quadratic with small integer noise,
which already induces a unimodular triangulation, and then perform a random
walk: one height at a time is moved by a random integer, and the move is
undone whenever the triangulation stops being unimodular.  The walk reaches
triangulations and edge lengths far from the honeycomb-like start, which a
single noisy draw does not.  Finally the heights are shifted by the affine
function vanishing at the three corners.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import ClassCountNotSeven, NonGenericCurve, UnclassifiableTangency
from .newton import dual_curve
from .quartic import DEGREE, LATTICE_POINTS, CoeffEntry, QuarticSpec

CURVATURE = 10
START_NOISE = 5
WALK_STEPS = 400
STEP_SIZES = (2, 5, 10, 20)


def _unimodular_triples():
    out = []
    for a, b, c in combinations(range(len(LATTICE_POINTS)), 3):
        pa, pb, pc = LATTICE_POINTS[a], LATTICE_POINTS[b], LATTICE_POINTS[c]
        d = (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pb[1] - pa[1]) * (pc[0] - pa[0])
        if abs(d) == 1:
            out.append((a, b, c, d))
    return out


_UNIMODULAR = _unimodular_triples()


def is_unimodular_lift(h: list[int]) -> bool:
    """Whether integer heights induce a unimodular regular triangulation.

    A unimodular triangle is a facet of the lower hull when every other
    lifted point lies strictly above its plane; the plane has integer
    coefficients because the triangle has determinant ±1.  Sixteen such
    facets cover the simplex.
    """
    pts = LATTICE_POINTS
    found = 0
    for a, b, c, d in _UNIMODULAR:
        pa, pb, pc = pts[a], pts[b], pts[c]
        ha = h[a]
        alpha = ((h[b] - ha) * (pc[1] - pa[1]) - (h[c] - ha) * (pb[1] - pa[1])) * d
        beta = ((h[c] - ha) * (pb[0] - pa[0]) - (h[b] - ha) * (pc[0] - pa[0])) * d
        gamma = ha - alpha * pa[0] - beta * pa[1]
        if all(h[k] > alpha * p[0] + beta * p[1] + gamma
               for k, p in enumerate(pts) if k != a and k != b and k != c):
            found += 1
    return found == DEGREE * DEGREE


def _start(rng):
    return [CURVATURE * (i * i + i * j + j * j) + rng.randint(0, START_NOISE) for i, j in LATTICE_POINTS]


def random_heights(rng: random.Random, steps: int = WALK_STEPS) -> dict:
    h = _start(rng)
    while not is_unimodular_lift(h):
        h = _start(rng)
    size = rng.choice(STEP_SIZES)
    for _ in range(steps):
        k = rng.randrange(len(h))
        delta = rng.randint(-size, size)
        h[k] += delta
        if not is_unimodular_lift(h):
            h[k] -= delta
    idx = {p: k for k, p in enumerate(LATTICE_POINTS)}
    a = Fraction(h[idx[(0, 0)]])
    b = (h[idx[(DEGREE, 0)]] - a) / DEGREE
    c = (h[idx[(0, DEGREE)]] - a) / DEGREE
    return {p: h[idx[p]] - a - b * p[0] - c * p[1] for p in LATTICE_POINTS}


def random_spec(rng: random.Random, steps: int = WALK_STEPS) -> QuarticSpec:
    h = random_heights(rng, steps)
    return QuarticSpec(tuple(CoeffEntry(i, j, h[(i, j)], rng.choice((1, -1))) for i, j in LATTICE_POINTS))


@dataclass
class Sample:
    spec: QuarticSpec
    curve: object
    classes: list
    attempts: int


def sample_generic(rng: random.Random, max_attempts: int = 200) -> Sample:
    """Draw until the quartic is smooth and its seven classes are generic."""
    from .classes import enumerate_classes

    for attempt in range(1, max_attempts + 1):
        spec = random_spec(rng)
        curve = dual_curve(spec)
        try:
            classes = enumerate_classes(curve)
        except (NonGenericCurve, ClassCountNotSeven, UnclassifiableTangency):
            continue
        return Sample(spec, curve, classes, attempt)
    raise NonGenericCurve(f"no generic quartic after {max_attempts} attempts")
