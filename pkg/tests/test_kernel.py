import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropbt import _kernel_py, kernel
from tropbt.classes import CurveIndex

compiled = pytest.importorskip("tropbt._kernel")


def test_backend_flag():
    assert kernel.BACKEND in ("compiled", "python")


def _points(index, rng, n):
    return [(rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6), rng.randint(1, 50)) for _ in range(n)]


def test_compiled_matches_reference(worked_curve):
    index = CurveIndex(worked_curve)
    pts = _points(index, random.Random(1), 300)
    assert compiled.crossings(index.int_pieces, index.prims, pts) == \
        _kernel_py.crossings(index.int_pieces, index.prims, pts)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(-50, 50), st.integers(-50, 50), st.integers(-9, 9), st.integers(-9, 9),
                          st.integers(0, 1)), min_size=1, max_size=8),
       st.lists(st.tuples(st.integers(-500, 500), st.integers(-500, 500), st.integers(1, 9)), min_size=1, max_size=8))
def test_compiled_matches_reference_on_arbitrary_pieces(pieces, points):
    prims = [(1, 0) if (p[2], p[3]) == (0, 0) else (p[2], p[3]) for p in pieces]
    assert compiled.crossings(pieces, prims, points) == _kernel_py.crossings(pieces, prims, points)


def test_overflow_guard_falls_back():
    pieces = [(0, 0, 1, 1, 0)]
    huge = [(10**30, 10**30, 1)]
    assert not kernel.fits_int64(pieces, huge)
    assert kernel.crossings(pieces, [(1, 1)], huge) == _kernel_py.crossings(pieces, [(1, 1)], huge)


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    env = dict(os.environ, TROPBT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from tropbt import kernel; print(kernel.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
