import json
from pathlib import Path

import pytest
from hypothesis import settings

from frobeniuskit.hilbert_kunz import PrimeFieldIdeal, PrimeFieldPoly
from frobeniuskit.io import fan_from_json, prime_field_ideal_from_json, ring_from_json
from frobeniuskit.toric import Cone, projective_space

settings.register_profile("repro", derandomize=True)
settings.load_profile("repro")

DATA = Path(__file__).parent / "data"

SEGRE_GENERATORS = [(0, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1),
                    (1, 0, 0, 1), (1, 1, 0, 1), (1, 0, 1, 1)]


def load(name):
    return json.loads((DATA / name).read_text())


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def quadrant():
    return Cone(2, ((1, 0), (0, 1)))


@pytest.fixture
def veronese():
    return Cone(2, ((1, 0), (1, 2)))


@pytest.fixture
def veronese_ring():
    return ring_from_json(load("veronese.json"))


@pytest.fixture
def segre_ring():
    return ring_from_json(load("segre.json"))


@pytest.fixture
def segre(segre_ring):
    return segre_ring.cone


@pytest.fixture
def p1():
    return fan_from_json(load("p1.json"))


@pytest.fixture
def p2():
    return projective_space(2)


def segre_ideal(p) -> PrimeFieldIdeal:
    """2x2 minors of the generic 2x3 matrix over F_p."""
    x = [PrimeFieldPoly.variable(p, 6, i) for i in range(6)]
    top, bot = x[:3], x[3:]
    minors = [top[i] * bot[j] - top[j] * bot[i] for i in range(3) for j in range(i + 1, 3)]
    return PrimeFieldIdeal(p, 6, tuple(minors))


def han_monsky() -> PrimeFieldPoly:
    return prime_field_ideal_from_json(load("han_monsky.json")).polynomials[0]


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[key])
