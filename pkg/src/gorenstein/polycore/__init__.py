"""Exact polynomial arithmetic and Groebner bases over the rationals."""

from .groebner import (
    GroebnerBasis,
    groebner_basis,
    ideal_contains,
    normal_form,
    reducer_for,
    standard_monomial_basis,
)
from .order import GREVLEX, LEX, TermOrder
from .parser import parse_polynomial
from .polynomial import (
    NEG_INF,
    Polynomial,
    apply_diff_operator,
    homogeneous_component,
    poly_mul,
    substitute_linear,
)

__all__ = [
    "GREVLEX",
    "LEX",
    "NEG_INF",
    "GroebnerBasis",
    "Polynomial",
    "TermOrder",
    "apply_diff_operator",
    "groebner_basis",
    "homogeneous_component",
    "ideal_contains",
    "normal_form",
    "parse_polynomial",
    "poly_mul",
    "reducer_for",
    "standard_monomial_basis",
    "substitute_linear",
]
