from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropbt.errors import DuplicateEntry, MalformedRational, MissingEntry, PointOutsideSimplex, SignNotPlusMinus
from tropbt.quartic import (
    IDENTITY,
    LATTICE_POINTS,
    S3_ELEMENTS,
    TAU0,
    TAU1,
    QuarticSpec,
    S3Element,
    apply_s3_direction,
    apply_s3_lattice,
    apply_s3_signs,
    format_spec,
    parse_rational,
    parse_sign,
    parse_spec,
)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)
signs = st.sampled_from((1, -1))
sign_tables = st.fixed_dictionaries({p: signs for p in LATTICE_POINTS})
elements = st.sampled_from(S3_ELEMENTS)


def test_fifteen_lattice_points():
    assert len(LATTICE_POINTS) == 15
    assert all(i + j <= 4 for i, j in LATTICE_POINTS)


@pytest.mark.parametrize("text,value", [("3", 3), ("-7/2", Fraction(-7, 2)), ("−5", -5), ("10/4", Fraction(5, 2))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1.5", "a", "1/0", ""])
def test_parse_rational_rejects(text):
    with pytest.raises(MalformedRational):
        parse_rational(text)


@pytest.mark.parametrize("text,value", [("+", 1), ("-", -1), ("−", -1), ("1", 1), ("-1", -1)])
def test_parse_sign(text, value):
    assert parse_sign(text) == value


def test_parse_sign_rejects():
    with pytest.raises(SignNotPlusMinus):
        parse_sign("0")


def test_worked_example_parses(worked_spec):
    assert worked_spec[(2, 2)].val == 32 and worked_spec[(2, 2)].sign == 1
    assert worked_spec[(0, 4)].sign == -1 and worked_spec[(0, 4)].lead == 17


def test_missing_and_duplicate_entries(worked_spec):
    text = format_spec(worked_spec)
    with pytest.raises(MissingEntry):
        parse_spec("\n".join(text.splitlines()[1:]))
    with pytest.raises(DuplicateEntry):
        parse_spec(text + text.splitlines()[0])
    with pytest.raises(MissingEntry):
        parse_spec("i=0 j=0 sign=+")


def test_point_outside_simplex(worked_spec):
    with pytest.raises(PointOutsideSimplex):
        parse_spec(format_spec(worked_spec) + "i=3 j=2 val=1 sign=+\n")


@settings(max_examples=50, deadline=None)
@given(st.fixed_dictionaries({p: rationals for p in LATTICE_POINTS}), sign_tables)
def test_format_parse_round_trip(heights, sg):
    spec = QuarticSpec.from_data(heights, sg)
    assert parse_spec(format_spec(spec)) == spec


def test_s3_group_relations():
    assert len({g.word for g in S3_ELEMENTS}) == 6
    assert (TAU0 * TAU0) == IDENTITY and (TAU1 * TAU1) == IDENTITY
    r = TAU0 * TAU1
    assert r * r * r == IDENTITY and r != IDENTITY
    assert TAU0 * TAU1 * TAU0 == TAU1 * TAU0 * TAU1


def test_word_is_application_order():
    # "t1t0" applies τ1 first: on the plane, τ0 ∘ τ1
    assert S3Element("t1t0") == TAU0 * TAU1
    assert str(S3Element("τ1τ0")) == "τ1τ0"


@given(elements, elements)
def test_lattice_action_is_a_homomorphism(a, b):
    for p in LATTICE_POINTS:
        assert apply_s3_lattice(a * b, p) == apply_s3_lattice(a, apply_s3_lattice(b, p))


@given(elements)
def test_lattice_action_permutes_the_simplex(g):
    image = [apply_s3_lattice(g, p) for p in LATTICE_POINTS]
    assert sorted(image) == sorted(LATTICE_POINTS)
    corners = {(0, 0), (4, 0), (0, 4)}
    assert {apply_s3_lattice(g, p) for p in corners} == corners


@given(elements)
def test_plane_action_preserves_line_directions(g):
    ends = {(-1, 0), (0, -1), (1, 1)}
    assert {apply_s3_direction(g, d) for d in ends} == ends


@given(elements, sign_tables)
def test_sign_transport_inverts(g, s):
    assert apply_s3_signs(g.inverse(), apply_s3_signs(g, s)) == s
    moved = apply_s3_signs(g, s)
    assert all(moved[apply_s3_lattice(g, p)] == s[p] for p in LATTICE_POINTS)


@given(elements)
def test_inverse(g):
    assert g * g.inverse() == IDENTITY
