import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropbt.errors import NotBitangent
from tropbt.intersect import (
    SECOND_SLOPE,
    TYPES,
    TropicalLine,
    curve_pieces,
    is_bitangent,
    stable_intersection,
    tangency_points,
)

coords = st.fractions(min_value=-60, max_value=60, max_denominator=6)


@settings(max_examples=200, deadline=None)
@given(coords, coords)
def test_total_multiplicity_is_four(worked_curve, x, y):
    r = stable_intersection(worked_curve, TropicalLine((x, y)))
    assert r.total == 4
    assert sum(c.mult for c in r.components) == 4


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 15))
def test_line_through_a_curve_vertex(worked_curve, k):
    v = worked_curve.vertices[k][0]
    r1 = stable_intersection(worked_curve, TropicalLine(v))
    r2 = stable_intersection(worked_curve, TropicalLine(v), SECOND_SLOPE)
    assert r1.total == 4 and sorted(r1.points) == sorted(r2.points)


def test_far_line(worked_curve):
    r = stable_intersection(worked_curve, TropicalLine((Fraction(-1000), Fraction(-1000))))
    assert r.total == 4


def test_members_are_bitangent(worked_classes):
    rng = random.Random(5)
    for cls in worked_classes:
        for _ in range(10):
            p = cls.sample_member(rng)
            assert is_bitangent(cls.curve, TropicalLine(p))


def test_tangency_types_and_multiplicities(worked_classes):
    for cls in worked_classes:
        for c in cls.cells:
            data = cls.data[c].tangencies
            assert data and all(d.type in TYPES for d in data)
            assert sum(d.mult for d in data) == 4


def test_bitangency_matches_class_membership(worked_curve, worked_classes):
    rng = random.Random(8)
    outside = 0
    for _ in range(200):
        v = (Fraction(rng.randint(-300, 300), 7), Fraction(rng.randint(-300, 300), 7))
        member = any(c.contains(v) for c in worked_classes)
        line = TropicalLine(v)
        assert is_bitangent(worked_curve, line) == member
        if not member:
            outside += 1
            with pytest.raises(NotBitangent):
                tangency_points(worked_curve, line)
    assert outside > 0


def test_pieces_cover_edges_and_rays(worked_curve):
    pieces = curve_pieces(worked_curve)
    assert len(pieces) == len(worked_curve.bounded_edges) + len(worked_curve.rays)
