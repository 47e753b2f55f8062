"""Machine-readable report of the full pipeline.

The document is JSON with fixed field names and a ``schema_version``.  Every
rational is written as a ``"p/q"`` (or ``"p"``) string, never as a float, so a
report parses back into an equal document.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .quartic import QuarticSpec, format_rational

SCHEMA_VERSION = 1


def _q(x) -> str:
    return format_rational(Fraction(x))


@dataclass
class MemberRecord:
    point: tuple                   # ("p/q", "p/q")
    weight: int


@dataclass
class ClassRecord:
    index: int
    label: str
    sigma: str
    dimension: int
    bounded: bool
    cells: dict                    # dimension (as text) -> number of cells
    members: list                  # MemberRecord
    params: dict
    real: bool
    real_count: int
    theta: str | None = None


@dataclass
class ReportDocument:
    input: list                    # coefficient records with rational strings
    signs_override: list
    subdivision: dict
    skeleton: dict
    classes: list                  # ClassRecord
    totals: dict
    theta: dict
    warnings: list = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return asdict(self)

    def render(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def consistent(self) -> bool:
        return (self.totals["complex"] == sum(m.weight for c in self.classes for m in c.members)
                and self.totals["real"] == sum(c.real_count for c in self.classes)
                and all(c.real_count == 4 * c.real for c in self.classes))


def parse_report(text: str) -> ReportDocument:
    raw = json.loads(text)
    if raw.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema {raw.get('schema_version')!r}")
    classes = []
    for c in raw["classes"]:
        members = [MemberRecord(tuple(m["point"]), m["weight"]) for m in c.pop("members")]
        classes.append(ClassRecord(members=members, **c))
    raw["classes"] = classes
    return ReportDocument(**raw)


def input_records(spec: QuarticSpec) -> list:
    return [{"i": e.i, "j": e.j, "val": _q(e.val), "sign": "+" if e.sign > 0 else "-", "lead": _q(e.lead)}
            for e in spec.entries]


def build_report(spec, curve, graph, classes, lifts, theta, overrides=(), warnings=()) -> ReportDocument:
    """Assemble the document from pipeline results.

    ``lifts`` is a :class:`tropbt.reality.LiftReport`; ``theta`` is a
    :class:`tropbt.theta.ThetaMatch` or an error message.
    """
    recs = []
    for k, (cls, lift) in enumerate(zip(classes, lifts.classes)):
        counts = {}
        for c in cls.cells:
            d = str(cls.arrangement.cells[c].dim)
            counts[d] = counts.get(d, 0) + 1
        members = [MemberRecord((_q(p[0]), _q(p[1])), w) for p, w in sorted(lift.weights.items())]
        recs.append(ClassRecord(k, lift.label, str(lift.sigma), cls.dimension, cls.bounded, counts, members,
                                dict(lift.params), lift.real, lift.real_count,
                                theta.pairs.get(k) if not isinstance(theta, str) else None))
    if isinstance(theta, str):
        theta_doc = {"ok": False, "error": theta}
    else:
        theta_doc = {"ok": True, "characteristics": len(theta.thetas),
                     "pairs": {str(k): v for k, v in sorted(theta.pairs.items())}}
    loops = [{"dual": list(p), "length": _q(length)} for p, (_ids, length) in sorted(graph.loops_dual.items())]
    return ReportDocument(
        input=input_records(spec),
        signs_override=list(overrides),
        subdivision={"triangles": len(curve.subdivision.triangles), "smooth": True,
                     "vertices": len(curve.vertices), "bounded_edges": len(curve.bounded_edges)},
        skeleton={"type": list(graph.type_triple), "loops": loops, "nodes": len(graph.nodes),
                  "edges": len(graph.edges)},
        classes=recs,
        totals={"classes": len(recs), "complex": lifts.complex_total, "real": lifts.real_total},
        theta=theta_doc,
        warnings=list(warnings),
    )
