import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropbt.catalog import canonicalize, load_catalog
from tropbt.lifting import composed_real
from tropbt.quartic import LATTICE_POINTS, apply_s3_signs
from tropbt.reality import REAL_TOTALS, extract_sign_params, lift_class, real_condition, real_count, spec_signs

sign_tables = st.fixed_dictionaries({p: st.sampled_from((1, -1)) for p in LATTICE_POINTS})


@pytest.fixture(scope="module")
def worked_canon(worked_classes):
    return [canonicalize(c) for c in worked_classes]


def test_worked_parameters(worked_canon):
    params = {(c.label, c.sigma.word): extract_sign_params(c).values for c in worked_canon}
    assert params[("E", "t1t0")] == {"v": 0, "i": 1}
    assert params[("E", "t0t1t0")] == {"v": 0, "i": 1}
    assert params[("S", "id")] == {} and params[("W", "t0t1t0")] == {}


def test_worked_real_total(worked_spec, worked_classes):
    r = real_count(worked_spec, classes=worked_classes)
    assert r.complex_total == 28 and r.real_total == 8
    assert {(r.classes[k].label, r.classes[k].sigma.word) for k in r.real_indices()} == {("S", "id"),
                                                                                        ("W", "t0t1t0")}
    assert all(c.totally_real == c.real for c in r.classes)


@settings(max_examples=60, deadline=None)
@given(s=sign_tables)
def test_catalog_and_composed_routes_agree(worked_classes, worked_canon, s):
    lifts = [lift_class(cls, s, canon=canon) for cls, canon in zip(worked_classes, worked_canon)]
    total = sum(c.real_count for c in lifts)
    assert total in REAL_TOTALS
    assert all(c.real_count in (0, 4) for c in lifts)


def test_routes_agree_on_random_quartics(random_samples):
    rng = random.Random(12)
    for sample in random_samples:
        canons = [canonicalize(c) for c in sample.classes]
        for _ in range(15):
            s = {p: rng.choice((1, -1)) for p in LATTICE_POINTS}
            flags = []
            for cls, canon in zip(sample.classes, canons):
                cat_route = real_condition(canon.label, extract_sign_params(canon),
                                           apply_s3_signs(canon.sigma, s))
                assert cat_route == composed_real(cls, s)
                flags.append(cat_route)
            assert 4 * sum(flags) in REAL_TOTALS


def test_unconditional_shapes_always_lift(worked_classes):
    cat = load_catalog()
    for cls in worked_classes:
        canon = canonicalize(cls)
        if cat[canon.label].unconditional:
            for flip in LATTICE_POINTS:
                s = {p: 1 for p in LATTICE_POINTS}
                s[flip] = -1
                assert lift_class(cls, s, canon=canon).real


def test_missing_signs_rejected(worked_spec, worked_classes):
    s = spec_signs(worked_spec)
    del s[(2, 2)]
    with pytest.raises(ValueError):
        real_count(worked_spec, s, classes=worked_classes)


def test_condition_is_frame_independent(worked_classes, random_samples):
    """Any admissible frame of a class gives the same real-lifting verdict."""
    rng = random.Random(21)
    cat = load_catalog()
    checked = 0
    for classes in [worked_classes] + [s.classes for s in random_samples]:
        for cls in classes:
            canon = canonicalize(cls)
            entry = cat[canon.label]
            frames = canon.verdict.frames
            if len(frames) < 2:
                continue
            for _ in range(10):
                s = {p: rng.choice((1, -1)) for p in LATTICE_POINTS}
                verdicts = set()
                for f in frames:
                    found = canon.verdict.params_of(f) if canon.verdict.params_of else {}
                    params = {p: found[p] for p in entry.params}
                    verdicts.add(real_condition(canon.label, params, apply_s3_signs(f, s)))
                assert len(verdicts) == 1, (canon.label, [str(f) for f in frames])
                checked += 1
    assert checked > 0
