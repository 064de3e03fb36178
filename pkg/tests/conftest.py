from fractions import Fraction

import pytest

from facialcycles.corpus import crosspolytope, cube, cyclic, simplex
from facialcycles.geometry import Polytope

HEXAGON = [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)]


def hexagonal_prism():
    return [tuple(map(Fraction, (x, y, z))) for z in (0, 1) for x, y in HEXAGON]


_CACHE = {}


def polytope(name):
    if name not in _CACHE:
        kind, d = name[:-1], int(name[-1])
        pts = {
            "cube": cube, "simplex": simplex, "cross": crosspolytope,
        }[kind](d) if kind != "hexprism" else hexagonal_prism()
        _CACHE[name] = Polytope.from_points(pts)
    return _CACHE[name]


@pytest.fixture(scope="session")
def cube3():
    return polytope("cube3")


@pytest.fixture(scope="session")
def cube4():
    return polytope("cube4")


@pytest.fixture(scope="session")
def simplex3():
    return polytope("simplex3")


@pytest.fixture(scope="session")
def cross3():
    return polytope("cross3")


@pytest.fixture(scope="session")
def hexprism():
    return polytope("hexprism3")


@pytest.fixture(scope="session")
def square():
    return polytope("cube2")


@pytest.fixture(scope="session")
def small_corpus():
    names = ["simplex2", "simplex3", "simplex4", "cube2", "cube3", "cube4", "cross3", "cross4",
             "hexprism3"]
    out = {n: polytope(n) for n in names}
    out["cyclic4_7"] = Polytope.from_points(cyclic(7, 4))
    return out


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
