"""Finite-dimensional quotients F[x1..xk]/I as structure-constant algebras."""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from . import linalg
from .errors import (
    ImproperIdeal,
    NotHomogeneous,
    NotLocal,
    SingularBasis,
)
from .polycore import (
    GREVLEX,
    Polynomial,
    groebner_basis,
    reducer_for,
    standard_monomial_basis,
)


class QuotientAlgebra:
    """Commutative algebra with basis ``b_0 = 1, b_1, ..., b_{d-1}``.

    Elements are coordinate vectors (lists of ``Fraction``) in that basis.
    The basis is the standard monomials of the Groebner basis unless a custom
    basis was supplied.  ``labels`` are the polynomials the basis was given
    as (equal to ``basis`` modulo the ideal); they are only used for display.
    """

    def __init__(self, gb, basis, std_monomials, to_custom=None, labels=None):
        self.gb = gb
        self.vars = gb.vars
        self.order = gb.order
        self.basis = tuple(basis)
        self.labels = tuple(labels) if labels is not None else self.basis
        self.std_monomials = tuple(std_monomials)
        self.dimension = len(self.basis)
        self._to_custom = to_custom
        self._reduce = reducer_for(gb)
        self._std_index = {e: i for i, e in enumerate(self.std_monomials)}
        self.table = [[None] * self.dimension for _ in range(self.dimension)]
        for i in range(self.dimension):
            for j in range(i, self.dimension):
                row = self.coords(self.basis[i] * self.basis[j])
                sparse = tuple((l, c) for l, c in enumerate(row) if c)
                self.table[i][j] = self.table[j][i] = sparse
        self._report = None

    @property
    def generators(self):
        return self.gb.generators

    @property
    def is_custom_basis(self):
        return self._to_custom is not None

    # coordinates ----------------------------------------------------------

    def normal_form(self, p):
        return Polynomial._raw(self.vars, self._reduce(p.terms))

    def coords(self, p):
        """Coordinates of the class of polynomial ``p``."""
        nf = self._reduce(p.terms)
        v = [Fraction(0)] * self.dimension
        for e, c in nf.items():
            v[self._std_index[e]] = c
        if self._to_custom is not None:
            v = linalg.vecmat(v, self._to_custom)
        return v

    def element(self, coords):
        """Normal-form polynomial representing a coordinate vector."""
        out = Polynomial.zero(self.vars)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(c)
        return out

    def unit(self):
        v = [Fraction(0)] * self.dimension
        v[0] = Fraction(1)
        return v

    def zero(self):
        return [Fraction(0)] * self.dimension

    def basis_vector(self, i):
        v = self.zero()
        v[i] = Fraction(1)
        return v

    def variable(self, i):
        return self.coords(Polynomial.variable(self.vars, i))

    def basis_labels(self):
        return [str(b) for b in self.labels]

    def describe(self, coords):
        """The element as a combination of basis labels, for display."""
        out = Polynomial.zero(self.vars)
        for c, b in zip(coords, self.labels):
            if c:
                out = out + b.scale(c)
        return str(out)

    # arithmetic -----------------------------------------------------------

    def mul(self, u, v):
        out = [Fraction(0)] * self.dimension
        nu = [(i, a) for i, a in enumerate(u) if a]
        nv = [(j, b) for j, b in enumerate(v) if b]
        for i, a in nu:
            row = self.table[i]
            for j, b in nv:
                ab = a * b
                for l, c in row[j]:
                    out[l] += ab * c
        return out

    def add(self, u, v):
        return [a + b for a, b in zip(u, v)]

    def sub(self, u, v):
        return [a - b for a, b in zip(u, v)]

    def scale(self, c, u):
        c = Fraction(c)
        return [c * a for a in u]

    def power(self, u, k):
        result = self.unit()
        base = list(u)
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def mult_matrix(self, u):
        """Matrix of ``a -> u*a``; column ``i`` holds ``u * b_i``."""
        cols = [self.mul(u, self.basis_vector(i)) for i in range(self.dimension)]
        return linalg.transpose(cols, self.dimension)

    def __repr__(self):
        return f"QuotientAlgebra(vars={self.vars}, dim={self.dimension})"


def build_quotient_algebra(gens, order=GREVLEX, custom_basis=None):
    """Model ``F[vars]/(gens)`` with structure constants.

    ``custom_basis`` is an optional list of polynomials whose classes form a
    basis; the first must reduce to 1 and the others must have zero constant
    term so that ``b_1..b_{d-1}`` span the maximal ideal of a local algebra.
    """
    gb = groebner_basis(gens, order)
    if gb.is_unit_ideal():
        raise ImproperIdeal("1 lies in the ideal")
    std = standard_monomial_basis(gb)
    vars = gb.vars
    std_polys = [Polynomial.monomial(vars, e) for e in std]
    if custom_basis is None:
        return QuotientAlgebra(gb, std_polys, std)

    d = len(std)
    custom = list(custom_basis)
    if len(custom) != d:
        raise SingularBasis(f"custom basis has {len(custom)} elements, algebra has dimension {d}")
    reduce = reducer_for(gb)
    index = {e: i for i, e in enumerate(std)}
    rows = []
    nfs = []
    for b in custom:
        nf = reduce(b.terms)
        row = [Fraction(0)] * d
        for e, c in nf.items():
            row[index[e]] = c
        rows.append(row)
        nfs.append(Polynomial._raw(vars, nf))
    try:
        inv = linalg.inverse(rows)
    except linalg.SingularMatrix:
        raise SingularBasis("custom basis is not linearly independent modulo the ideal") from None
    if nfs[0] != Polynomial.one(vars):
        raise SingularBasis("the first custom basis element must be 1")
    for b in nfs[1:]:
        if b.constant_term() != 0:
            raise SingularBasis(f"basis element {b} has a nonzero constant term")
    return QuotientAlgebra(gb, nfs, std, to_custom=inv, labels=custom)


@dataclass(frozen=True)
class StructureReport:
    dimension: int
    is_local: bool
    max_ideal_basis: tuple
    socle_basis: tuple
    is_gorenstein: bool
    nil_index: int
    embedding_dimension: int
    filtration: tuple
    filtration_bases: tuple

    @property
    def socle_dimension(self):
        return len(self.socle_basis)


def _is_nilpotent(A, u):
    return not any(A.power(u, A.dimension))


def _span_products(A, vectors, multipliers):
    span = linalg.EchelonSpan(A.dimension)
    for v in vectors:
        for x in multipliers:
            span.add(A.mul(v, x))
    return span.basis()


def structure_report(A):
    """Locality, socle, Gorenstein flag, nil-index and power filtration."""
    if A._report is not None:
        return A._report
    d = A.dimension
    xs = [A.variable(i) for i in range(len(A.vars))]
    for i, x in enumerate(xs):
        if not _is_nilpotent(A, x):
            raise NotLocal(f"variable {A.vars[i]} is not nilpotent in the quotient")

    m_basis = [A.basis_vector(i) for i in range(1, d)]
    # Ann(m) inside m: kernel of u -> (u*x_1, ..., u*x_k) on coordinates 1..d-1.
    stacked = []
    for x in xs:
        mx = A.mult_matrix(x)
        stacked.extend(row[1:] for row in mx)
    ker = linalg.kernel(stacked, d - 1) if d > 1 else []
    socle = tuple(tuple([Fraction(0)] + v) for v in ker)

    filtration = []
    bases = []
    current = m_basis
    while current:
        filtration.append(len(current))
        bases.append(tuple(tuple(v) for v in current))
        current = _span_products(A, current, xs)
    nu = len(filtration)
    m2 = filtration[1] if nu > 1 else 0
    report = StructureReport(
        dimension=d,
        is_local=True,
        max_ideal_basis=tuple(tuple(v) for v in m_basis),
        socle_basis=socle,
        is_gorenstein=(len(socle) == 1 and d > 1),
        nil_index=nu,
        embedding_dimension=(d - 1) - m2,
        filtration=tuple(filtration),
        filtration_bases=tuple(bases),
    )
    A._report = report
    return report


def power_filtration(A):
    """Dimensions of m, m^2, ..., m^nu."""
    return list(structure_report(A).filtration)


def filtration_level(A, v):
    """Largest ``i`` with ``v`` in ``m^i`` (0 if ``v`` is not in ``m``)."""
    rep = structure_report(A)
    level = 0
    for i, basis in enumerate(rep.filtration_bases, start=1):
        span = linalg.EchelonSpan(A.dimension)
        for b in basis:
            span.add(b)
        if span.contains(v):
            level = i
        else:
            break
    if not any(v):
        return rep.nil_index + 1
    return level


@dataclass(frozen=True)
class GradingData:
    weights: tuple
    dims: tuple  # ((weight, dim), ...) sorted by weight

    def dims_by_weight(self):
        return dict(self.dims)

    @property
    def top_weight(self):
        return max(w for w, _ in self.dims)


def check_grading(A, weights):
    """Verify that every generator is weighted-homogeneous and return the
    dimensions of the induced graded pieces."""
    weights = tuple(int(w) for w in weights)
    if len(weights) != len(A.vars):
        raise ValueError(f"need {len(A.vars)} weights, got {len(weights)}")
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be positive integers")
    for g in A.generators:
        if not g.is_homogeneous(weights):
            raise NotHomogeneous(f"generator {g} is not weighted-homogeneous for weights {weights}", g)
    counts = Counter(sum(w * e for w, e in zip(weights, mon)) for mon in A.std_monomials)
    return GradingData(weights, tuple(sorted(counts.items())))


def find_grading(A, max_coeff=4):
    """Search for positive integer weights making every generator homogeneous.

    Returns the weight vector with the smallest maximal entry among small
    integer combinations of a kernel basis, or ``None``.
    """
    k = len(A.vars)
    rows = []
    for g in A.generators:
        exps = sorted(g.terms)
        for e in exps[1:]:
            rows.append([Fraction(a - b) for a, b in zip(e, exps[0])])
    ker = linalg.kernel(rows, k) if rows else linalg.identity(k)
    if not ker:
        return None
    if len(ker) == k:
        return (1,) * k
    if len(ker) > 3:
        max_coeff = 1
    best = None
    rng = range(-max_coeff, max_coeff + 1)
    for coeffs in product(rng, repeat=len(ker)):
        v = [sum(c * b[i] for c, b in zip(coeffs, ker)) for i in range(k)]
        if all(x > 0 for x in v):
            w = _primitive(v)
            if best is None or (max(w), w) < (max(best), best):
                best = w
    return tuple(best) if best else None


def _primitive(v):
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]
