import random
from importlib.resources import files

import pytest

from tropbt.classes import enumerate_classes
from tropbt.newton import dual_curve, skeleton
from tropbt.quartic import parse_spec
from tropbt.sampling import sample_generic

RANDOM_SEED = 20261014


@pytest.fixture(scope="session")
def worked_spec():
    return parse_spec((files("tropbt") / "data" / "worked_example.q").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def worked_curve(worked_spec):
    return dual_curve(worked_spec)


@pytest.fixture(scope="session")
def worked_classes(worked_curve):
    return enumerate_classes(worked_curve)


@pytest.fixture(scope="session")
def worked_graph(worked_curve):
    return skeleton(worked_curve)


@pytest.fixture(scope="session")
def random_samples():
    """Ten smooth generic quartics with their curves and classes."""
    rng = random.Random(RANDOM_SEED)
    return [sample_generic(rng) for _ in range(10)]
