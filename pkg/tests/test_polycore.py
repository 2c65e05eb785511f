from fractions import Fraction
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gorenstein.errors import (
    BudgetExceeded,
    DimensionMismatch,
    InfiniteDimensional,
    ParseError,
    UnknownVariable,
    VariableMismatch,
)
from gorenstein.linalg import matmul, rank
from gorenstein.polycore import (
    GREVLEX,
    LEX,
    NEG_INF,
    Polynomial,
    TermOrder,
    apply_diff_operator,
    groebner_basis,
    homogeneous_component,
    ideal_contains,
    normal_form,
    parse_polynomial,
    poly_mul,
    standard_monomial_basis,
    substitute_linear,
)

XY = ("x", "y")
XYZ = ("x", "y", "z")
MU1 = "1/10080*y^7 - 1/48*x^2*y^4 + 1/48*x^4*y"


def P(text, vars=XY):
    return parse_polynomial(text, vars)


def random_poly(rng, vars, terms=4, max_exp=3, spread=5):
    out = {}
    for _ in range(rng.randint(0, terms)):
        e = tuple(rng.randint(0, max_exp) for _ in vars)
        out[e] = Fraction(rng.randint(-spread, spread), rng.randint(1, 4))
    return Polynomial(vars, out)


def to_sympy(p):
    syms = sympy.symbols(p.vars)
    return sum((sympy.Rational(c.numerator, c.denominator) * sympy.prod([s ** k for s, k in zip(syms, e)])
                for e, c in p.terms.items()), sympy.Integer(0))


def from_sympy(expr, vars):
    poly = sympy.Poly(expr, *sympy.symbols(vars))
    return Polynomial(vars, {e: Fraction(int(c.p), int(c.q)) for e, c in poly.terms()})


# parsing -----------------------------------------------------------------------


def test_parse_generator_of_a1():
    p = P("2*x^3 + 1*x*y^3")
    assert p.terms == {(3, 0): 2, (1, 3): 1}


def test_parse_zero_and_binomial():
    assert P("0").is_zero()
    assert P("(x+y)^2") == P("x^2 + 2*x*y + y^2")


def test_parse_rationals_and_signs():
    assert P("-3/4*x - -y") == Polynomial(XY, {(1, 0): Fraction(-3, 4), (0, 1): 1})
    assert P("  x ^ 2 * y  ") == Polynomial(XY, {(2, 1): 1})


@pytest.mark.parametrize("text, pos", [("x +", 3), ("x * * y", 4), ("(x + y", 6), ("x ^ y", 4), ("2 $ x", 2)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        P(text)
    assert info.value.position == pos


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        P("x + z")


def test_zero_denominator():
    with pytest.raises(ParseError):
        P("1/0*x")


def test_round_trip_random():
    rng = random.Random(7)
    for _ in range(100):
        p = random_poly(rng, XYZ, terms=6, max_exp=4)
        assert parse_polynomial(str(p), XYZ) == p


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 5), st.integers(0, 5)),
                       st.fractions(min_value=-50, max_value=50, max_denominator=30), max_size=6))
def test_round_trip_hypothesis(terms):
    p = Polynomial(XY, terms)
    assert P(str(p)) == p


def test_printing_order():
    assert str(P("x*y^3 + 2*x^3")) == "x*y^3 + 2*x^3"
    assert str(Polynomial(XY, {})) == "0"


# arithmetic --------------------------------------------------------------------


def test_mul_examples():
    assert poly_mul(P("x+y"), P("x-y")) == P("x^2 - y^2")
    p = P("3*x^2 - y + 1/2")
    assert poly_mul(p, Polynomial.one(XY)) == p
    assert P("x^2*y^2") * P("y^3") == P("x^2*y^5")


def test_mul_variable_mismatch():
    with pytest.raises(VariableMismatch):
        P("x") * parse_polynomial("x", ("x", "z"))


def test_ring_axioms_random():
    rng = random.Random(11)
    for _ in range(200):
        a, b, c = (random_poly(rng, XYZ) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a + b) - b == a


def test_arithmetic_matches_sympy():
    rng = random.Random(12)
    for _ in range(30):
        a, b = random_poly(rng, XY), random_poly(rng, XY)
        assert a * b - a == from_sympy(sympy.expand(to_sympy(a) * to_sympy(b) - to_sympy(a)), XY)


def test_zero_degree_sentinel():
    z = Polynomial.zero(XY)
    assert z.degree() is NEG_INF
    assert NEG_INF < 0 and not NEG_INF > -(10 ** 9)
    with pytest.raises(TypeError):
        NEG_INF + 1
    assert P("x^2*y + 1").degree() == 3


# substitution --------------------------------------------------------------------


def test_substitute_linear_examples():
    mu = Fraction(-3, 2)
    p = P("y^7")
    assert substitute_linear(p, [[1, 0], [0, mu]]) == p.scale(mu ** 7)
    q = P("x^3 - 2*x*y + 5")
    assert substitute_linear(q, [[1, 0], [0, 1]]) == q
    assert substitute_linear(P("x^2*y"), [[0, 1], [1, 0]]) == P("x*y^2")


def test_substitute_linear_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        substitute_linear(P("x"), [[1]])


def _random_matrix(rng, n):
    return [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)] for _ in range(n)]


def test_substitute_linear_composition_and_degrees():
    rng = random.Random(13)
    for _ in range(40):
        p = random_poly(rng, XYZ, terms=5, max_exp=3)
        M, N = _random_matrix(rng, 3), _random_matrix(rng, 3)
        assert substitute_linear(substitute_linear(p, M), N) == substitute_linear(p, matmul(M, N))
        for m in range(0, 10):
            assert (homogeneous_component(substitute_linear(p, M), m)
                    == substitute_linear(homogeneous_component(p, m), M))


def test_substitute_linear_matches_sympy():
    rng = random.Random(14)
    x, y = sympy.symbols(XY)
    for _ in range(10):
        p = random_poly(rng, XY)
        M = _random_matrix(rng, 2)
        rat = [[sympy.Rational(c.numerator, c.denominator) for c in row] for row in M]
        expected = to_sympy(p).subs({x: rat[0][0] * x + rat[0][1] * y, y: rat[1][0] * x + rat[1][1] * y},
                                     simultaneous=True)
        assert substitute_linear(p, M) == from_sympy(sympy.expand(expected), XY)


# homogeneous components ----------------------------------------------------------


def test_homogeneous_component_examples():
    assert homogeneous_component(P("x^2 + x*y + y"), 2) == P("x^2 + x*y")
    assert homogeneous_component(Polynomial.zero(XY), 3).is_zero()


def test_components_sum_to_polynomial():
    rng = random.Random(15)
    for _ in range(50):
        p = random_poly(rng, XYZ, terms=6)
        total = Polynomial.zero(XYZ)
        for m in range(13):
            c = homogeneous_component(p, m)
            assert c.is_zero() or c.is_homogeneous()
            total = total + c
        assert total == p


# differential operators -------------------------------------------------------------


def test_apply_diff_operator_examples():
    assert apply_diff_operator(P("2*x^3 + x*y^3"), P(MU1)).is_zero()
    assert apply_diff_operator(P("x"), P("y")).is_zero()
    one = ("x",)
    assert apply_diff_operator(parse_polynomial("x^2", one), parse_polynomial("x^2", one)) == 2


def test_apply_diff_operator_arity():
    with pytest.raises(VariableMismatch):
        apply_diff_operator(P("x"), parse_polynomial("x", ("x",)))


def test_apply_diff_operator_matches_sympy():
    rng = random.Random(16)
    x, y = sympy.symbols(XY)
    for _ in range(30):
        f, g = random_poly(rng, XY, max_exp=2), random_poly(rng, XY, max_exp=4)
        expected = sympy.Integer(0)
        gs = to_sympy(g)
        for (a, b), c in f.terms.items():
            term = gs
            if a:
                term = sympy.diff(term, x, a)
            if b:
                term = sympy.diff(term, y, b)
            expected += sympy.Rational(c.numerator, c.denominator) * term
        assert apply_diff_operator(f, g) == from_sympy(sympy.expand(expected), XY)


def test_operator_composition():
    rng = random.Random(17)
    for _ in range(100):
        f1, f2 = random_poly(rng, XY, max_exp=2), random_poly(rng, XY, max_exp=2)
        g = random_poly(rng, XY, terms=6, max_exp=5)
        assert apply_diff_operator(f1 * f2, g) == apply_diff_operator(f1, apply_diff_operator(f2, g))
        assert apply_diff_operator(f1 + f2, g) == apply_diff_operator(f1, g) + apply_diff_operator(f2, g)


# term orders ---------------------------------------------------------------------


def test_term_orders():
    x2, xy3, y4 = (2, 0), (1, 3), (0, 4)
    assert GREVLEX.key(xy3) > GREVLEX.key(x2)
    assert LEX.key(x2) > LEX.key(xy3)
    w = TermOrder.parse("weighted:3,2")
    assert w.key((1, 3)) > w.key((2, 0))  # 9 > 6
    assert w.key(y4) < w.key(xy3)
    assert TermOrder.parse("grevlex") == GREVLEX
    with pytest.raises(ValueError):
        TermOrder.parse("degrevlex")


def test_precedence_reverses_variables():
    swapped = TermOrder("lex", precedence=(1, 0))
    assert swapped.key((0, 1)) > swapped.key((1, 0))


# Groebner bases ------------------------------------------------------------------


def _as_set(gb):
    return {p for p in gb.basis}


def test_monomial_ideal_is_reduced():
    gb = groebner_basis([P("x^2"), P("y^2")])
    assert _as_set(gb) == {P("x^2"), P("y^2")}
    assert standard_monomial_basis(gb) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_hand_run_example():
    gb = groebner_basis([P("y - x^2"), P("x^3")], LEX)
    assert normal_form(P("x^3"), gb).is_zero()
    # y = x^2 and x^3 = 0 give x*y = 0 and y^2 = 0; lex basis {x^2 - y, x*y, y^2}
    assert _as_set(gb) == {P("x^2 - y"), P("x*y"), P("y^2")}


def test_a1_has_fifteen_standard_monomials():
    gb = groebner_basis([P("2*x^3 + x*y^3"), P("x^2*y^2 + 2*y^5")])
    assert len(standard_monomial_basis(gb)) == 15


def test_a1_count_by_linear_algebra():
    """Oracle: dimension of F[x,y]/I from the span of the ideal truncated by weighted degree."""
    gens = [P("2*x^3 + x*y^3"), P("x^2*y^2 + 2*y^5")]
    top = 20  # weighted degree bound, weights (3, 2); A_1 lives in weights <= 14
    mons = [(a, b) for a in range(8) for b in range(11) if 3 * a + 2 * b <= top]
    index = {m: i for i, m in enumerate(mons)}
    rows = []
    for g in gens:
        gw = max(3 * a + 2 * b for a, b in g.terms)
        for a, b in mons:
            if 3 * a + 2 * b + gw <= top:
                h = g * Polynomial.monomial(XY, (a, b))
                row = [Fraction(0)] * len(mons)
                for e, c in h.terms.items():
                    row[index[e]] = c
                rows.append(row)
    # every monomial above weight 14 lies in the ideal, so only weights <= 14 count
    low = [m for m in mons if 3 * m[0] + 2 * m[1] <= 14]
    quotient = len(mons) - rank(rows, len(mons))
    assert quotient == 15
    assert len(low) > 15


def test_normal_form_examples():
    gens = [P("2*x^3 + x*y^3"), P("x^2*y^2 + 2*y^5")]
    gb = groebner_basis(gens, LEX)
    assert normal_form(P("x^3"), gb) == P("-1/2*x*y^3")
    for g in gens:
        assert normal_form(g, gb).is_zero()
    assert normal_form(Polynomial.one(XY), gb) == 1


def test_infinite_dimensional():
    gb = groebner_basis([P("x")])
    with pytest.raises(InfiniteDimensional):
        standard_monomial_basis(gb)


def test_unit_ideal():
    gb = groebner_basis([P("x"), P("x - 1")])
    assert gb.is_unit_ideal()
    assert standard_monomial_basis(gb) == []


@pytest.mark.parametrize("order, name", [(GREVLEX, "grevlex"), (LEX, "lex")])
def test_groebner_matches_sympy(order, name):
    rng = random.Random(18)
    x, y, z = sympy.symbols(XYZ)
    checked = 0
    for _ in range(25):
        gens = [random_poly(rng, XYZ, terms=3, max_exp=2, spread=3) for _ in range(3)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        ours = groebner_basis(gens, order)
        theirs = sympy.groebner([to_sympy(g) for g in gens], x, y, z, order=name)
        expected = {from_sympy(e, XYZ) for e in theirs.exprs}
        expected = {e.scale(1 / e.leading_term(order)[1]) for e in expected}
        assert _as_set(ours) == expected
        checked += 1
    assert checked > 15


def test_groebner_axioms():
    rng = random.Random(19)
    for _ in range(20):
        gens = [random_poly(rng, XY, terms=3, max_exp=3) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        gb = groebner_basis(gens)
        for g in gens:
            assert ideal_contains(gb, g)
        for p in gb.basis:
            assert p.leading_term(GREVLEX)[1] == 1
        leads = gb.leading_monomials()
        for p in gb.basis:
            lead = p.leading_term(GREVLEX)[0]
            for e in p.terms:
                if e != lead:
                    assert not any(all(a <= b for a, b in zip(l, e)) for l in leads)


def test_normal_form_multiplicative_and_idempotent():
    rng = random.Random(20)
    ideals = [[P("x^2"), P("y^2")], [P("2*x^3 + x*y^3"), P("x^2*y^2 + 2*y^5")], [P("x^2 + y^2"), P("x*y")]]
    for gens in ideals:
        gb = groebner_basis(gens)
        for _ in range(200):
            p, q = random_poly(rng, XY, max_exp=4), random_poly(rng, XY, max_exp=4)
            np_, nq = normal_form(p, gb), normal_form(q, gb)
            assert normal_form(p * q, gb) == normal_form(np_ * nq, gb)
            assert normal_form(np_, gb) == np_


def test_budget_is_enforced():
    gens = [P("x^3 - y^2 + x*y + 1", XY), P("y^3 - x^2 + 2", XY)]
    with pytest.raises(BudgetExceeded):
        groebner_basis(gens, LEX, max_pairs=1)
