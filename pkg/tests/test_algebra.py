from fractions import Fraction
from itertools import product

import pytest

from conftest import XY, a_t, fixture_algebra, polys, random_vector, truncated, two_var
from gorenstein.algebra import build_quotient_algebra, check_grading, filtration_level, find_grading, power_filtration, structure_report
from gorenstein.errors import ImproperIdeal, InfiniteDimensional, NotHomogeneous, NotLocal, SingularBasis
from gorenstein.linalg import EchelonSpan
from gorenstein.polycore import Polynomial, TermOrder, parse_polynomial


def random_poly(rng, vars, terms=4, max_exp=4):
    out = {}
    for _ in range(rng.randint(0, terms)):
        e = tuple(rng.randint(0, max_exp) for _ in vars)
        out[e] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Polynomial(vars, out)


# construction --------------------------------------------------------------------


def test_truncated_cube():
    A = truncated(3)
    assert [str(b) for b in A.basis] == ["1", "x", "x^2"]
    x = A.variable(0)
    assert A.mul(x, x) == A.basis_vector(2)
    assert A.mul(x, A.basis_vector(2)) == A.zero()


def test_a1_monomial_basis_accepted(A1):
    assert A1.dimension == 15
    assert A1.is_custom_basis
    assert A1.basis_labels()[-1] == "x^2*y^4"
    for i, label in enumerate(A1.labels):
        assert A1.coords(label) == A1.basis_vector(i)


def test_circle_algebra_basis():
    # with x preferred, grevlex reduces x^2 to -y^2; with y preferred the basis is {1, x, y, x^2}
    A = build_quotient_algebra(polys(["x^2 + y^2", "x*y"], XY), TermOrder("grevlex", precedence=(1, 0)))
    assert sorted(str(b) for b in A.basis) == sorted(["1", "x", "y", "x^2"])
    assert A.coords(parse_polynomial("y^2", XY)) == A.coords(parse_polynomial("-x^2", XY))
    B = two_var("x^2 + y^2", "x*y")
    assert sorted(str(b) for b in B.basis) == sorted(["1", "x", "y", "y^2"])
    assert B.normal_form(parse_polynomial("x^2", XY)) == parse_polynomial("-y^2", XY)


def test_construction_errors():
    with pytest.raises(InfiniteDimensional):
        build_quotient_algebra(polys(["x"], XY))
    with pytest.raises(ImproperIdeal):
        build_quotient_algebra(polys(["x - 1", "x"], ("x",)))
    with pytest.raises(SingularBasis):
        build_quotient_algebra(polys(["x^3"], ("x",)), custom_basis=polys(["1", "x", "2*x"], ("x",)))
    with pytest.raises(SingularBasis):
        build_quotient_algebra(polys(["x^3"], ("x",)), custom_basis=polys(["1", "x"], ("x",)))
    with pytest.raises(SingularBasis):
        build_quotient_algebra(polys(["x^3"], ("x",)), custom_basis=polys(["1", "x + 1", "x^2"], ("x",)))


def test_custom_basis_changes_coordinates_only():
    gens = polys(["x^3"], ("x",))
    A = build_quotient_algebra(gens, custom_basis=polys(["1", "x + x^2", "2*x^2"], ("x",)))
    u = A.coords(parse_polynomial("x", ("x",)))
    assert u == [0, 1, Fraction(-1, 2)]
    assert A.element(A.mul(u, u)) == parse_polynomial("x^2", ("x",))


# multiplication ------------------------------------------------------------------


def test_table_matches_normal_form(fixture_name, rng):
    A = fixture_algebra(fixture_name)
    for _ in range(200):
        p, q = random_poly(rng, A.vars), random_poly(rng, A.vars)
        assert A.mul(A.coords(p), A.coords(q)) == A.coords(p * q)


def test_table_symmetric(fixture_name):
    A = fixture_algebra(fixture_name)
    for i in range(A.dimension):
        for j in range(A.dimension):
            assert A.table[i][j] == A.table[j][i]


def test_ring_laws(fixture_name, rng):
    A = fixture_algebra(fixture_name)
    one = A.unit()
    for _ in range(50):
        u, v, w = (random_vector(rng, A.dimension) for _ in range(3))
        assert A.mul(A.mul(u, v), w) == A.mul(u, A.mul(v, w))
        assert A.mul(u, v) == A.mul(v, u)
        assert A.mul(one, u) == u == A.mul(u, one)


# structure -----------------------------------------------------------------------


def test_a1_structure(A1):
    rep = structure_report(A1)
    assert (rep.dimension, rep.is_local, rep.is_gorenstein) == (15, True, True)
    assert rep.nil_index == 7
    assert rep.embedding_dimension == 2
    assert rep.socle_basis == (tuple(A1.basis_vector(14)),)


def test_smallest_gorenstein():
    rep = structure_report(truncated(2))
    assert (rep.dimension, rep.is_gorenstein, rep.nil_index) == (2, True, 1)
    assert rep.socle_basis == ((0, 1),)


def test_not_gorenstein():
    rep = structure_report(two_var("x^2", "x*y", "y^2"))
    assert rep.socle_dimension == 2
    assert not rep.is_gorenstein


def test_field_is_not_gorenstein():
    rep = structure_report(build_quotient_algebra(polys(["x"], ("x",))))
    assert rep.dimension == 1 and not rep.is_gorenstein


def test_not_local():
    A = build_quotient_algebra(polys(["x^2 - x"], ("x",)))
    with pytest.raises(NotLocal):
        structure_report(A)
    with pytest.raises(NotLocal):
        power_filtration(A)


def test_power_filtration_examples(A1):
    assert power_filtration(truncated(4)) == [3, 2, 1]
    assert power_filtration(two_var("x^2", "y^2")) == [3, 1]
    dims = power_filtration(A1)
    assert dims[:2] == [14, 12] and dims[-1] == 1


def _monomial_span_filtration(A):
    """Oracle: m^i spanned by classes of monomials of total degree >= i."""
    dims = []
    i = 1
    while True:
        span = EchelonSpan(A.dimension)
        top = i + 12
        for e in product(range(top + 1), repeat=len(A.vars)):
            if i <= sum(e) <= top:
                span.add(A.coords(Polynomial.monomial(A.vars, e)))
        if len(span) == 0:
            return dims
        dims.append(len(span))
        i += 1


@pytest.mark.parametrize("name", ["x^5", "x2,y2", "x2+y2,xy", "A1", "A3"])
def test_filtration_matches_monomial_oracle(name):
    A = fixture_algebra(name)
    assert power_filtration(A) == _monomial_span_filtration(A)


def test_filtration_strictly_decreasing(fixture_name):
    dims = power_filtration(fixture_algebra(fixture_name))
    assert all(a > b for a, b in zip(dims, dims[1:]))


def test_top_power_is_socle(fixture_name):
    A = fixture_algebra(fixture_name)
    rep = structure_report(A)
    assert rep.socle_dimension == 1
    top = rep.filtration_bases[-1]
    assert len(top) == 1
    span = EchelonSpan(A.dimension)
    span.add(rep.socle_basis[0])
    assert span.contains(top[0])


def test_filtration_level():
    A = truncated(5)
    assert filtration_level(A, A.basis_vector(2)) == 2
    assert filtration_level(A, A.unit()) == 0
    assert filtration_level(A, A.zero()) == 5


def test_a0_nil_index_is_six():
    A0 = a_t(0, monomial_basis=False)
    rep = structure_report(A0)
    assert rep.nil_index == 6
    assert rep.is_gorenstein


@pytest.mark.parametrize("t", [1, 3, -1, Fraction(1, 2)])
def test_a_t_nil_index_seven(t):
    assert structure_report(a_t(t, monomial_basis=False)).nil_index == 7


# gradings --------------------------------------------------------------------


A_T_DIMS = {0: 1, 2: 1, 3: 1, 4: 1, 5: 1, 6: 2, 7: 1, 8: 2, 9: 1, 10: 1, 11: 1, 12: 1, 14: 1}


@pytest.mark.parametrize("t", [1, 3])
def test_a_t_grading(t):
    g = check_grading(a_t(t), (3, 2))
    assert g.dims_by_weight() == A_T_DIMS
    assert sum(g.dims_by_weight().values()) == 15
    assert g.top_weight == 14


def test_grading_examples():
    assert check_grading(two_var("x^2", "y^2"), (1, 1)).dims_by_weight() == {0: 1, 1: 2, 2: 1}
    with pytest.raises(NotHomogeneous):
        check_grading(build_quotient_algebra(polys(["x^2 + x^3"], ("x",))), (1,))
    with pytest.raises(ValueError):
        check_grading(truncated(3), (1, 1))


def test_grading_is_multiplicative(rng):
    A = fixture_algebra("A1")
    weight = {}
    for i, label in enumerate(A.labels):
        (e,) = label.terms
        weight[i] = 3 * e[0] + 2 * e[1]
    for i in range(A.dimension):
        for j in range(A.dimension):
            for l, _ in A.table[i][j]:
                assert weight[l] == weight[i] + weight[j]


def test_find_grading():
    assert find_grading(a_t(1)) == (3, 2)
    assert find_grading(two_var("x^2", "y^2")) == (1, 1)
    assert find_grading(build_quotient_algebra(polys(["x^2 + x^3"], ("x",)))) is None
