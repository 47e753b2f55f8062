import random

from tropbt.classes import closure_defects, enumerate_classes
from tropbt.lifting import complex_mults


def test_seven_closed_disjoint_classes(worked_classes, random_samples):
    for classes in [worked_classes] + [s.classes for s in random_samples]:
        assert len(classes) == 7
        seen = set()
        for cls in classes:
            assert closure_defects(cls) == []
            assert not seen & set(cls.cells)
            seen |= set(cls.cells)


def test_class_weights(worked_classes, random_samples):
    for classes in [worked_classes] + [s.classes for s in random_samples]:
        assert [sum(complex_mults(c).values()) for c in classes] == [4] * 7


def test_backends_agree(worked_curve):
    a = enumerate_classes(worked_curve, backend="python")
    b = enumerate_classes(worked_curve, backend="compiled")
    assert [c.cells for c in a] == [c.cells for c in b]


def test_membership_is_exclusive(worked_classes):
    rng = random.Random(9)
    for k, cls in enumerate(worked_classes):
        for _ in range(20):
            p = cls.sample_member(rng)
            assert [j for j, other in enumerate(worked_classes) if other.contains(p)] == [k]


def test_recession_cones(worked_classes, random_samples):
    allowed = {(-1, -1), (1, 0), (0, 1)}
    for classes in [worked_classes] + [s.classes for s in random_samples]:
        for cls in classes:
            rec = cls.recession_directions()
            assert set(rec) <= allowed
            assert cls.bounded == (not rec)
