import itertools

import pytest

from tropbt.catalog import canonicalize, load_catalog, parse_catalog, signature, weights
from tropbt.classes import enumerate_classes
from tropbt.errors import UnrecognizedShape
from tropbt.lifting import complex_mults
from tropbt.newton import dual_curve
from tropbt.quartic import S3_ELEMENTS, S3Element, apply_s3_spec

LETTERS = [chr(c) for c in range(ord("A"), ord("Z") + 1)]
LABELS = set(LETTERS) | {x + x for x in "ABCDEFGHI"} | {"L′", "Q′", "T′", "T″", "U′", "H′"}


def test_catalog_labels():
    cat = load_catalog()
    assert len(cat) == 41
    assert set(cat.entries) == LABELS


def test_weights_sum_to_four():
    for entry in load_catalog():
        assert sum(entry.weights) == 4 and all(w > 0 for w in entry.weights)
        assert weights(entry.label) == entry.weights


def test_weight_families():
    four = {"A", "B", "C", "H", "H′", "M"}
    ones = {"W", "X", "Y", "Z", "AA", "BB", "CC", "DD", "EE", "FF", "GG", "HH"}
    for entry in load_catalog():
        if entry.label in four:
            assert entry.weights == (4,)
        elif entry.label in ones:
            assert entry.weights == (1, 1, 1, 1)
        elif entry.label == "II":
            assert entry.weights == (1, 1, 2)
        else:
            assert entry.weights == (2, 2)


def test_signatures_distinct_and_indexed():
    cat = load_catalog()
    sigs = [s for e in cat for s in e.signatures]
    assert len(sigs) == len(set(sigs)) == len(cat.by_signature)
    assert all(cat.by_signature[s] == e.label for e in cat for s in e.signatures)


def test_declared_params_match_conditions():
    for entry in load_catalog():
        used = set().union(*(c.params() for c in entry.conditions)) if entry.conditions else set()
        assert used == set(entry.params)


BLOCK = "[X]\nweights: 2 2\ntemplate: X\nparams: i\ncondition: s[0,i] > 0\n"


def test_parse_rejects_duplicates_and_bad_params():
    assert len(parse_catalog(BLOCK)) == 1
    with pytest.raises(ValueError):
        parse_catalog(BLOCK + BLOCK)
    with pytest.raises(ValueError):
        parse_catalog(BLOCK.replace("params: i", "params: i j"))
    with pytest.raises(ValueError):
        parse_catalog("weights: 4\n" + BLOCK)
    sig = "signature: (('point',(False,False,True)),)\n"
    with pytest.raises(ValueError):
        parse_catalog(BLOCK + sig + BLOCK.replace("[X]", "[Y]") + sig)


def test_worked_example_canonical_forms(worked_classes):
    got = sorted((c.label, c.sigma.word) for c in map(canonicalize, worked_classes))
    assert got == sorted([("S", "id"), ("E", "t1t0"), ("W", "t0t1t0"), ("E", "t0t1t0")] + [("A", "id")] * 3)


def test_canonical_weights_are_member_weights(worked_classes):
    for cls in worked_classes:
        canon = canonicalize(cls)
        assert canon.weights == complex_mults(cls)
        assert tuple(sorted(canon.weights.values())) == weights(canon.label)


def test_signature_is_deterministic(worked_classes):
    for cls in worked_classes:
        assert signature(cls, S3Element("t0")) == signature(cls, S3Element("t0"))


@pytest.mark.parametrize("word", ["t0", "t1", "t0t1t0"])
def test_canonicalization_is_equivariant(worked_spec, worked_classes, word):
    """Moving the whole quartic by σ leaves the labels and signatures unchanged."""
    g = S3Element(word)
    moved = enumerate_classes(dual_curve(apply_s3_spec(g, worked_spec)))
    before = sorted((c.label, c.signature) for c in map(canonicalize, worked_classes))
    after = sorted((c.label, c.signature) for c in map(canonicalize, moved))
    assert before == after


def test_signature_orbit_contains_representative(worked_classes):
    for cls in worked_classes:
        canon = canonicalize(cls)
        orbit = {signature(cls, g) for g in S3_ELEMENTS}
        assert canon.signature in orbit


def test_strict_rejects_unlisted_signature(worked_classes):
    cat = load_catalog()
    cls = worked_classes[0]
    sig = canonicalize(cls).signature
    original = cat.by_signature
    object.__setattr__(cat, "by_signature", {k: v for k, v in original.items() if k != sig})
    try:
        with pytest.raises(UnrecognizedShape):
            canonicalize(cls, strict=True)
        assert canonicalize(cls, strict=False).signature == sig
    finally:
        object.__setattr__(cat, "by_signature", original)


def test_population_pairs_are_unique(random_samples):
    """No two classes of one quartic share a label and a signature in different frames."""
    for s in random_samples:
        for a, b in itertools.combinations(map(canonicalize, s.classes), 2):
            if a.signature == b.signature:
                assert a.label == b.label
