"""The full computation for one quartic, shared by the CLI and the test suites."""

from __future__ import annotations

from dataclasses import dataclass

from .classes import enumerate_classes
from .errors import BijectionFailure, InputError
from .newton import TropicalCurve, dual_curve, skeleton
from .quartic import CoeffEntry, QuarticSpec, parse_sign
from .reality import LiftReport, real_count
from .theta import ThetaMatch, class_theta_bijection

ALLOWED_RECESSION = frozenset({(-1, -1), (1, 0), (0, 1)})


def override_signs(spec: QuarticSpec, overrides) -> QuarticSpec:
    """Apply ``["s31=-", ...]`` style overrides to the coefficient signs."""
    want = {}
    for item in overrides:
        key, sep, value = item.partition("=")
        key = key.strip().lower()
        if not sep or not key.startswith("s") or len(key) != 3 or not key[1:].isdigit():
            raise InputError(f"sign override {item!r} is not of the form sIJ=±")
        want[(int(key[1]), int(key[2]))] = parse_sign(value.strip())
    known = {e.point for e in spec.entries}
    for p in want:
        if p not in known:
            raise InputError(f"sign override for {p}, which has no coefficient")
    return QuarticSpec(tuple(CoeffEntry(e.i, e.j, e.val, want.get(e.point, e.sign), e.lead)
                             for e in spec.entries))


@dataclass
class Analysis:
    spec: QuarticSpec
    curve: TropicalCurve
    graph: object
    classes: list
    lifts: LiftReport
    theta: ThetaMatch | str


def analyze(spec: QuarticSpec, curve: TropicalCurve | None = None, classes=None,
            strict: bool = True, theta: bool = True) -> Analysis:
    """Classes, shapes, real lifts and the theta matching of a quartic."""
    if curve is None:
        curve = dual_curve(spec)
    if classes is None:
        classes = enumerate_classes(curve)
    lifts = real_count(spec, classes=classes, strict=strict)
    graph = skeleton(curve)
    match: ThetaMatch | str = "not computed"
    if theta:
        try:
            match = class_theta_bijection(classes, curve, graph)
        except BijectionFailure as exc:
            match = str(exc)
    return Analysis(spec, curve, graph, classes, lifts, match)


def invariant_failures(a: Analysis) -> list:
    """Global invariants of a smooth generic quartic that do not hold for ``a``."""
    out = []
    if len(a.classes) != 7:
        out.append(f"{len(a.classes)} classes")
    for k, c in enumerate(a.lifts.classes):
        if sum(c.weights.values()) != 4:
            out.append(f"class {k} ({c.label}) has weight sum {sum(c.weights.values())}")
    if a.lifts.complex_total != 28:
        out.append(f"complex total {a.lifts.complex_total}")
    if a.lifts.real_total not in (4, 8, 16, 28):
        out.append(f"real total {a.lifts.real_total}")
    for k, cls in enumerate(a.classes):
        extra = {tuple(d) for d in cls.recession_directions()} - ALLOWED_RECESSION
        if extra:
            out.append(f"class {k} recedes along {sorted(extra)}")
    if isinstance(a.theta, str):
        out.append(f"theta bijection: {a.theta}")
    return out
