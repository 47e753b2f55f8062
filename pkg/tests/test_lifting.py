import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropbt.errors import ZeroCoefficient
from tropbt.lifting import LOCAL_MULT, complex_mults, member_weight, mult4_initial_forms

coeff = st.floats(min_value=0.5, max_value=2.0) | st.floats(min_value=-2.0, max_value=-0.5)
scale = st.floats(min_value=0.1, max_value=10.0)


def test_left_unit_values():
    f = mult4_initial_forms("left", 1, 1, 1)
    assert f.m == pytest.approx(-1 / 8) and f.n == pytest.approx(8)
    assert f.p == pytest.approx(((3 + 2 * math.sqrt(3)) / 64, -(1 + math.sqrt(3)) / 4))


def test_right_unit_values():
    f = mult4_initial_forms("right", 1, 1, 1)
    assert f.m == pytest.approx(-1) and f.n == pytest.approx(0.25)
    assert f.p_prime == pytest.approx((4 * (1 - math.sqrt(2)), math.sqrt(2)))


def test_residual_example():
    a, b, c = 2, 3, 5
    f = mult4_initial_forms("left", a, b, c)
    for x, y in (f.p, f.p_prime):
        assert abs(a * x + b * y ** 3 + c * y ** 4) < 1e-12
        assert abs(y + f.m + f.n * x) < 1e-12
        assert abs(a - f.n * (3 * b * y ** 2 + 4 * c * y ** 3)) < 1e-12


@pytest.mark.parametrize("args", [("left", 0, 1, 1), ("right", 1, 0, 1), ("left", 1, 1, 0)])
def test_zero_coefficient(args):
    with pytest.raises(ZeroCoefficient):
        mult4_initial_forms(*args)


def test_bad_side():
    with pytest.raises(ValueError):
        mult4_initial_forms("middle", 1, 1, 1)


@given(st.sampled_from(("left", "right")), coeff, coeff, coeff, scale)
def test_scaling_keeps_signs(side, a, b, c, k):
    f, g = mult4_initial_forms(side, a, b, c), mult4_initial_forms(side, k * a, k * b, k * c)
    assert math.copysign(1, f.m) == math.copysign(1, g.m)
    assert math.copysign(1, f.n) == math.copysign(1, g.n)


@given(st.sampled_from(("left", "right")), coeff, coeff, coeff)
def test_tangency_points_distinct(side, a, b, c):
    f = mult4_initial_forms(side, a, b, c)
    assert f.p != f.p_prime


def test_local_multiplicity_table():
    assert LOCAL_MULT["1"] == 0 and LOCAL_MULT["2"] == 1
    assert all(LOCAL_MULT[t] == 2 for t in ("3a", "3b", "3c", "5a"))


def test_member_weights_on_worked_example(worked_classes):
    for cls in worked_classes:
        w = complex_mults(cls)
        assert sum(w.values()) == 4
        for c in cls.cells:
            p = cls.arrangement.cells[c].sample
            assert member_weight(cls.data[c].tangencies) == w.get(p, 0)
