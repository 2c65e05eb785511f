from fractions import Fraction
import random

import pytest

from gorenstein.algebra import build_quotient_algebra
from gorenstein.polycore import parse_polynomial

MONOMIAL_BASIS = ("1, x, y, x^2, x*y, y^2, x^2*y, x*y^2, y^3, x*y^3, x^2*y^2, y^4, "
               "x^2*y^3, x*y^4, x^2*y^4")
XY = ("x", "y")


def polys(texts, vars):
    return [parse_polynomial(t, vars) for t in texts]


def a_t(t, monomial_basis=True):
    """A_t = F[x,y]/(2x^3 + t x y^3, t x^2 y^2 + 2 y^5)."""
    t = Fraction(t)
    gens = [parse_polynomial("2*x^3", XY) + parse_polynomial("x*y^3", XY).scale(t),
            parse_polynomial("x^2*y^2", XY).scale(t) + parse_polynomial("2*y^5", XY)]
    basis = polys(MONOMIAL_BASIS.split(","), XY) if monomial_basis else None
    return build_quotient_algebra(gens, custom_basis=basis)


def truncated(d):
    return build_quotient_algebra(polys([f"x^{d}"], ("x",)))


def two_var(*gens):
    return build_quotient_algebra(polys(gens, XY))


_CACHE = {}


def fixture_algebra(name):
    """The fixture set shared by the property suites."""
    if name not in _CACHE:
        if name.startswith("x^"):
            _CACHE[name] = truncated(int(name[2:]))
        elif name == "x2,y2":
            _CACHE[name] = two_var("x^2", "y^2")
        elif name == "x2+y2,xy":
            _CACHE[name] = two_var("x^2 + y^2", "x*y")
        elif name == "A1":
            _CACHE[name] = a_t(1)
        elif name == "A3":
            _CACHE[name] = a_t(3)
        else:
            raise KeyError(name)
    return _CACHE[name]


FIXTURES = ["x^2", "x^3", "x^4", "x^5", "x^6", "x2,y2", "x2+y2,xy", "A1", "A3"]


def random_vector(rng, d, spread=3, denominators=(1, 2, 3)):
    return [Fraction(rng.randint(-spread, spread), rng.choice(denominators)) for _ in range(d)]


def random_max_ideal(rng, A, spread=3):
    v = random_vector(rng, A.dimension, spread)
    v[0] = Fraction(0)
    return v


@pytest.fixture(params=FIXTURES)
def fixture_name(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(20240521)


@pytest.fixture(scope="session")
def A1():
    return fixture_algebra("A1")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
