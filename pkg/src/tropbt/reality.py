"""Real lifts of bitangent classes through the shape catalog.

A class is moved to its catalog representative by ``σ``, the sign parameters
of its label are read off the σ-image of the dual subdivision, and the
label's sign inequalities are evaluated on the σ-transformed signs
``s'(p) = s(σ⁻¹ p)``.  Independently, :func:`tropbt.lifting.composed_real`
chains the local conditions of each weighted member in the class's own
frame; the two verdicts must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .catalog import Canonical, canonicalize, load_catalog
from .classes import enumerate_classes
from .errors import ConditionMismatch, ParameterNotFound
from .lifting import composed_real
from .newton import dual_curve
from .quartic import LATTICE_POINTS, S3Element, QuarticSpec, apply_s3_signs
from .signcond import evaluate

REAL_TOTALS = frozenset({4, 8, 16, 28})


@dataclass(frozen=True)
class SignParams:
    label: str
    sigma: S3Element
    values: dict                   # parameter name -> integer


def extract_sign_params(canon: Canonical) -> SignParams:
    """Resolve the parameters of the label's condition in the representative frame."""
    entry = load_catalog()[canon.label]
    if not entry.params:
        return SignParams(canon.label, canon.sigma, {})
    found = canon.verdict.params_of(canon.sigma) if canon.verdict.params_of else {}
    missing = [p for p in entry.params if p not in found]
    if missing:
        raise ParameterNotFound(f"{canon.label}: parameters {missing} not resolved")
    return SignParams(canon.label, canon.sigma, {p: found[p] for p in entry.params})


def real_condition(label: str, params: SignParams | Mapping[str, int], signs: Mapping[tuple, int]) -> bool:
    """Evaluate the catalog condition of a label on σ-transformed signs."""
    values = params.values if isinstance(params, SignParams) else params
    return all(evaluate(c, values, signs) for c in load_catalog()[label].conditions)


@dataclass
class ClassLift:
    label: str
    sigma: S3Element
    weights: dict                  # member point -> complex multiplicity
    params: dict
    real: bool

    @property
    def real_count(self) -> int:
        return 4 if self.real else 0

    @property
    def totally_real(self) -> bool:
        return self.real


@dataclass
class LiftReport:
    classes: list = field(default_factory=list)

    @property
    def complex_total(self) -> int:
        return sum(sum(c.weights.values()) for c in self.classes)

    @property
    def real_total(self) -> int:
        return sum(c.real_count for c in self.classes)

    def real_indices(self) -> list:
        return [k for k, c in enumerate(self.classes) if c.real]


def spec_signs(spec: QuarticSpec) -> dict:
    return {e.point: e.sign for e in spec.entries}


def lift_class(cls, signs: Mapping[tuple, int], canon: Canonical | None = None,
               strict: bool = True, cross_check: bool = True) -> ClassLift:
    if canon is None:
        canon = canonicalize(cls, strict=strict)
    params = extract_sign_params(canon)
    real = real_condition(canon.label, params, apply_s3_signs(canon.sigma, signs))
    if cross_check:
        other = composed_real(cls, signs)
        if other != real:
            raise ConditionMismatch(f"shape {canon.label} under {canon.sigma}: catalog condition says {real}, "
                                    f"local conditions say {other}")
    return ClassLift(canon.label, canon.sigma, canon.weights, params.values, real)


def real_count(spec: QuarticSpec, signs: Mapping[tuple, int] | None = None, classes=None,
               strict: bool = True, cross_check: bool = True) -> LiftReport:
    """Complex weights and real lifts of all seven classes of a quartic."""
    if classes is None:
        classes = enumerate_classes(dual_curve(spec))
    if signs is None:
        signs = spec_signs(spec)
    missing = [p for p in LATTICE_POINTS if p not in signs]
    if missing:
        raise ValueError(f"signs missing for {missing}")
    return LiftReport([lift_class(c, signs, strict=strict, cross_check=cross_check) for c in classes])
