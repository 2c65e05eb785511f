"""Macaulay inverse systems and their extraction from nil-polynomials."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product

from . import linalg
from .algebra import structure_report
from .errors import NotAComplement, NotInsideKernel, ZeroPolynomial
from .nilpoly import exp_functional
from .polycore import Polynomial, apply_diff_operator


def annihilator_member(f, g):
    """True iff ``f(d/dy)`` kills ``g``."""
    return apply_diff_operator(f, g).is_zero()


def derivative_span_dimension(g):
    """Dimension of the span of ``g`` and all its iterated partial derivatives.

    Breadth-first closure over single partials; only derivatives that enlarge
    the span are expanded further, which suffices by linearity.
    """
    if g.is_zero():
        raise ZeroPolynomial("the derivative span of 0 is not defined")
    divisors = set()
    for e in g.terms:
        divisors.update(product(*(range(x + 1) for x in e)))
    index = {e: i for i, e in enumerate(sorted(divisors))}
    span = linalg.EchelonSpan(len(index))
    level = [g]
    while level:
        nxt = []
        for p in level:
            row = [Fraction(0)] * len(index)
            for e, c in p.terms.items():
                row[index[e]] = c
            if span.add(row):
                nxt.extend(q for q in (p.diff(i) for i in range(p.nvars)) if not q.is_zero())
        level = nxt
    return len(span)


@dataclass(frozen=True)
class InverseSystemVerdict:
    polynomial: Polynomial
    annihilates: bool
    failing_generators: tuple
    span_dimension: int
    algebra_dimension: int

    @property
    def holds(self):
        return self.annihilates and self.span_dimension == self.algebra_dimension


def verify_relations(generators, dimension, g):
    """Check that every generator annihilates ``g`` and that the derivative
    span of ``g`` has the given dimension."""
    failing = tuple(f for f in generators if not annihilator_member(f, g))
    span = derivative_span_dimension(g) if not g.is_zero() else 0
    return InverseSystemVerdict(g, not failing, failing, span, dimension)


def verify_inverse_system(A, g):
    """Whether ``g`` is an inverse system for ``A = F[x]/I``: ``I`` kills ``g``
    and ``dim span(derivatives of g) = dim A``."""
    if len(g.vars) != len(A.vars):
        raise ValueError(f"g has {len(g.vars)} variables, algebra has {len(A.vars)}")
    return verify_relations(A.generators, A.dimension, g)


def default_complement(A, pi):
    """The first basis elements (in basis order) that span m/m^2 inside K."""
    rep = structure_report(A)
    m2 = linalg.EchelonSpan(A.dimension)
    for v in (rep.filtration_bases[1] if rep.nil_index > 1 else ()):
        m2.add(v)
    chosen = []
    for k in pi.kernel_basis:
        if m2.add(k):
            chosen.append(list(k))
        if len(chosen) == rep.embedding_dimension:
            break
    if len(chosen) < rep.embedding_dimension:
        raise NotAComplement("ker(pi) ∩ m does not contain a complement to m^2 (nil-index 1)")
    return chosen


def check_complement(A, pi, L):
    """Raise unless ``L`` is a basis of a complement to m^2 in m lying in K."""
    rep = structure_report(A)
    k = rep.embedding_dimension
    if len(L) != k:
        raise NotAComplement(f"need {k} elements (embedding dimension), got {len(L)}")
    for e in L:
        if not pi.in_kernel(e):
            raise NotInsideKernel("complement element is not in ker(pi) ∩ m")
    span = linalg.EchelonSpan(A.dimension)
    for v in (rep.filtration_bases[1] if rep.nil_index > 1 else ()):
        span.add(v)
    for e in L:
        if not span.add(e):
            raise NotAComplement("elements are dependent modulo m^2")


def restrict_nil_polynomial(P, L, names=None):
    """Restriction of the nil-polynomial to ``span(L)`` as ``omega(exp(.))``.

    The sign follows ``Q = omega o exp`` (no leading minus), so the result
    is ``-P`` restricted; it is expressed in fresh variables, by default the
    algebra's own variable names when the counts agree.
    """
    pi = P.projection
    A = pi.algebra
    L = [list(map(Fraction, e)) for e in L]
    check_complement(A, pi, L)
    if names is None:
        names = A.vars if len(L) == len(A.vars) else tuple(f"y{i}" for i in range(1, len(L) + 1))
    return exp_functional(A, pi.omega, L, tuple(names), scale=1 / pi.socle_value)


def relation_ideal(A, L, names=None):
    """Generators of the ideal of relations among the elements ``L``.

    Every monomial of degree nu+1 is a relation; below that degree the
    relations are the linear dependencies among monomial images.
    """
    k = len(L)
    if names is None:
        names = A.vars if k == len(A.vars) else tuple(f"x{i}" for i in range(1, k + 1))
    nu = structure_report(A).nil_index
    mons = []
    images = []
    powers = {(0,) * k: A.unit()}
    for deg in range(nu + 1):
        for combo in combinations_with_replacement(range(k), deg):
            e = [0] * k
            for i in combo:
                e[i] += 1
            e = tuple(e)
            if e not in powers:
                i = next(j for j in range(k) if e[j])
                prev = list(e)
                prev[i] -= 1
                powers[e] = A.mul(powers[tuple(prev)], L[i])
            mons.append(e)
            images.append(powers[e])
    # kernel of the evaluation map: columns are monomials, rows coordinates
    matrix = linalg.transpose(images, len(images))
    rels = []
    for vec in linalg.kernel(matrix, len(mons)):
        rels.append(Polynomial(names, {e: c for e, c in zip(mons, vec) if c}))
    for combo in combinations_with_replacement(range(k), nu + 1):
        e = [0] * k
        for i in combo:
            e[i] += 1
        rels.append(Polynomial.monomial(names, e))
    return rels


def restrict_polynomial(poly, pi, L, names):
    """``poly`` (in kernel coordinates of ``pi``) restricted to ``span(L)``."""
    forms = [pi.decompose(list(map(Fraction, e)))[0] for e in L]
    images = [Polynomial.linear_form(names, [f[i] for f in forms]) for i in range(pi.n)]
    return poly.compose(images, names)


def restrict_top_component(P, L, names=None):
    """The degree-``nu`` component of the nil-polynomial restricted to
    ``span(L)``, with the same sign convention as :func:`restrict_nil_polynomial`.

    For a standard graded algebra and ``L`` spanning the degree-one part the
    two restrictions coincide.
    """
    pi = P.projection
    A = pi.algebra
    check_complement(A, pi, L)
    if names is None:
        names = A.vars if len(L) == len(A.vars) else tuple(f"y{i}" for i in range(1, len(L) + 1))
    nu = structure_report(A).nil_index
    return -restrict_polynomial(P.component(nu), pi, L, tuple(names))
