"""Admissible projections, exp/log on the maximal ideal, nil-polynomials,
the forms omega_m, Blaschke data, the star product and projection
translation.

Coordinates on ``K = ker(pi) ∩ m`` are named ``a1, ..., an``.  The socle is
identified with the base field through a fixed generator ``s``, so the
nil-polynomial is the scalar ``P(u) = -omega(exp u) / omega(s)``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import linalg
from .algebra import structure_report
from .errors import (
    DegenerateQuadraticForm,
    DegreeOutOfRange,
    ElementNotInMaxIdeal,
    NotGorenstein,
    UnitPartNotOne,
)
from .polycore import Polynomial


def coordinate_names(n, prefix="a"):
    return tuple(f"{prefix}{i}" for i in range(1, n + 1))


@dataclass(eq=False)
class AdmissibleProjection:
    """Linear functional ``omega`` on A with ``omega(1) = 0`` and
    ``omega(s) != 0`` for the socle generator ``s``; the projection itself is
    ``a -> (omega(a) / omega(s)) * s``.

    ``kernel_basis`` is the ordered basis ``k_1..k_n`` of ``K``; ``k_j`` is the
    algebra basis element ``b_j`` corrected along ``s`` into ``ker omega``
    (indices 0 and ``socle_index`` are skipped).
    """

    algebra: object
    omega: tuple
    socle: tuple
    socle_index: int
    kernel_basis: tuple
    kernel_indices: tuple
    _gram: list = field(default=None, repr=False)
    _gram_inv: list = field(default=None, repr=False)

    @property
    def n(self):
        return len(self.kernel_basis)

    @property
    def names(self):
        return coordinate_names(self.n)

    def functional(self, a):
        return sum((w * x for w, x in zip(self.omega, a) if w and x), Fraction(0))

    @property
    def socle_value(self):
        return self.functional(self.socle)

    def value(self, a):
        """Socle coordinate of the projection of ``a``."""
        return self.functional(a) / self.socle_value

    def embed(self, alpha):
        """Algebra element ``sum alpha_i k_i``."""
        d = self.algebra.dimension
        out = [Fraction(0)] * d
        for a, k in zip(alpha, self.kernel_basis):
            if a:
                for l, x in enumerate(k):
                    if x:
                        out[l] += a * x
        return out

    def decompose(self, v):
        """Split ``v`` in m as ``u + beta*s`` with ``u`` in K; return ``(alpha, beta)``."""
        if v[0] != 0:
            raise ElementNotInMaxIdeal("element has a nonzero unit coordinate")
        beta = self.value(v)
        u = [x - beta * s for x, s in zip(v, self.socle)]
        up = u[self.socle_index]
        alpha = [u[j] - up * self.socle[j] for j in self.kernel_indices]
        return alpha, beta

    def in_kernel(self, v):
        return v[0] == 0 and self.functional(v) == 0

    def same_as(self, other):
        return (self.algebra is other.algebra and tuple(self.omega) == tuple(other.omega)
                and tuple(self.socle) == tuple(other.socle))

    @classmethod
    def from_functional(cls, A, omega, socle=None):
        rep = structure_report(A)
        if not rep.is_gorenstein:
            raise NotGorenstein(f"socle has dimension {rep.socle_dimension}")
        omega = tuple(Fraction(w) for w in omega)
        if omega[0] != 0:
            raise ValueError("an admissible functional must vanish on 1")
        if socle is None:
            socle = rep.socle_basis[0]
        socle, p = _distinguished_socle(A, tuple(Fraction(x) for x in socle))
        ws = sum(w * x for w, x in zip(omega, socle))
        if ws == 0:
            raise ValueError("functional vanishes on the socle")
        kernel = []
        idx = []
        for j in range(1, A.dimension):
            if j == p:
                continue
            lam = omega[j] / ws
            k = [Fraction(0)] * A.dimension
            k[j] = Fraction(1)
            if lam:
                k = [x - lam * s for x, s in zip(k, socle)]
            kernel.append(tuple(k))
            idx.append(j)
        return cls(A, omega, tuple(socle), p, tuple(kernel), tuple(idx))


def _distinguished_socle(A, s):
    """Scale the socle generator so its term-order-largest basis entry is 1."""
    key = A.order.key
    cands = [j for j, x in enumerate(s) if x]
    p = max(cands, key=lambda j: key(A.basis[j].leading_term(A.order)[0]))
    c = s[p]
    return tuple(x / c for x in s), p


def default_projection(A):
    """Projection dual to the distinguished socle basis element."""
    rep = structure_report(A)
    if not rep.is_gorenstein:
        raise NotGorenstein(f"socle has dimension {rep.socle_dimension}, need 1 and dim > 1")
    socle, p = _distinguished_socle(A, rep.socle_basis[0])
    omega = [Fraction(0)] * A.dimension
    omega[p] = Fraction(1)
    return AdmissibleProjection.from_functional(A, omega, socle)


# exp / log ------------------------------------------------------------------


def _check_in_m(u):
    if u[0] != 0:
        raise ElementNotInMaxIdeal("element has a nonzero coordinate on 1")


def exp_element(A, u):
    """``sum u^m / m!``; the series stops once powers of u vanish."""
    _check_in_m(u)
    out = A.unit()
    term = A.unit()
    m = 0
    while True:
        m += 1
        term = A.scale(Fraction(1, m), A.mul(term, u))
        if not any(term):
            return out
        out = A.add(out, term)


def log_element(A, v):
    """``log(1 + u) = sum (-1)^(m+1) u^m / m``."""
    if v[0] != 1:
        raise UnitPartNotOne(f"unit coordinate is {v[0]}, expected 1")
    u = list(v)
    u[0] = Fraction(0)
    out = A.zero()
    power = A.unit()
    m = 0
    while True:
        m += 1
        power = A.mul(power, u)
        if not any(power):
            return out
        sign = 1 if m % 2 else -1
        out = A.add(out, A.scale(Fraction(sign, m), power))


# symbolic expansion -----------------------------------------------------------


def functional_powers(A, omega, vectors, top):
    """Polynomials ``F_m(t) = omega(u^m)`` for ``u = sum t_a vectors[a]``,
    ``m = 0..top``, as dicts keyed by exponent tuples.

    Powers are built by repeated multiplication with the generic linear
    element, and ``omega`` is applied only at the end of each step.
    """
    d = A.dimension
    nv = len(vectors)
    # step[i] lists (l, a, coef): coordinate l of b_i * vectors[a].
    step = []
    for i in range(d):
        bi = A.basis_vector(i)
        entries = []
        for a, vec in enumerate(vectors):
            prod = A.mul(bi, vec)
            entries.extend((l, a, c) for l, c in enumerate(prod) if c)
        step.append(entries)
    bumps = [tuple(int(k == a) for k in range(nv)) for a in range(nv)]

    zero_exp = (0,) * nv
    current = [dict() for _ in range(d)]
    current[0][zero_exp] = Fraction(1)
    results = [_apply_functional(omega, current)]
    for _ in range(top):
        nxt = [dict() for _ in range(d)]
        for i, poly in enumerate(current):
            if not poly:
                continue
            for l, a, coef in step[i]:
                target = nxt[l]
                bump = bumps[a]
                for e, c in poly.items():
                    ne = tuple(x + y for x, y in zip(e, bump))
                    s = target.get(ne, 0) + c * coef
                    if s:
                        target[ne] = s
                    else:
                        target.pop(ne, None)
        current = nxt
        results.append(_apply_functional(omega, current))
        if not any(current):
            break
    while len(results) <= top:
        results.append({})
    return results


def _apply_functional(omega, coords):
    out = {}
    for w, poly in zip(omega, coords):
        if w and poly:
            for e, c in poly.items():
                s = out.get(e, 0) + w * c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
    return out


def exp_functional(A, omega, vectors, names, scale=1, start=0):
    """``scale * sum_{j>=start} omega(u^j) / j!`` as a polynomial in ``names``."""
    nu = structure_report(A).nil_index
    powers = functional_powers(A, omega, vectors, nu)
    terms = {}
    for j, poly in enumerate(powers):
        if j < start or not poly:
            continue
        f = Fraction(scale) / factorial(j)
        for e, c in poly.items():
            terms[e] = terms.get(e, 0) + f * c
    return Polynomial(names, terms)


@dataclass(frozen=True, eq=False)
class NilPolynomial:
    projection: AdmissibleProjection
    poly: Polynomial
    degree: object

    @property
    def vars(self):
        return self.poly.vars

    def component(self, m):
        return self.poly.homogeneous_component(m)


def nil_polynomial(A, pi):
    """``P(u) = -omega(exp u) / omega(s)`` on ``K`` in coordinates ``a1..an``."""
    poly = exp_functional(A, pi.omega, pi.kernel_basis, pi.names,
                          scale=-1 / pi.socle_value, start=0)
    return NilPolynomial(pi, poly, poly.degree())


def nil_value(A, pi, u):
    """Numerical value of the nil-polynomial at the K-element ``u``."""
    return -pi.value(exp_element(A, u))


# forms ------------------------------------------------------------------------


def omega_form(A, pi, m, *us):
    """``omega_m(u_1..u_m) = omega(u_1 ... u_m) / omega(s)`` for ``u_i`` in K."""
    nu = structure_report(A).nil_index
    if not 2 <= m <= nu:
        raise DegreeOutOfRange(f"m={m} outside 2..{nu}")
    if len(us) != m:
        raise ValueError(f"omega_{m} needs {m} arguments, got {len(us)}")
    prod = A.unit()
    for u in us:
        if not pi.in_kernel(u):
            raise ElementNotInMaxIdeal("argument is not in ker(pi) ∩ m")
        prod = A.mul(prod, u)
    return pi.value(prod)


def gram_matrix(A, pi):
    """Matrix of omega_2 on the kernel basis."""
    if pi._gram is None:
        ks = pi.kernel_basis
        pi._gram = [[pi.value(A.mul(ki, kj)) for kj in ks] for ki in ks]
    return pi._gram


def _gram_inverse(A, pi):
    if pi._gram_inv is None:
        try:
            pi._gram_inv = linalg.inverse(gram_matrix(A, pi))
        except linalg.SingularMatrix:
            raise DegenerateQuadraticForm("omega_2 is degenerate on K") from None
    return pi._gram_inv


def bilinear_gram(A, pi):
    """Gram matrix of ``b(a, c) = omega(ac)/omega(s)`` on the full basis."""
    basis = [A.basis_vector(i) for i in range(A.dimension)]
    return [[pi.value(A.mul(a, c)) for c in basis] for a in basis]


def star_product(A, pi, u, v):
    """The K-element ``u*v`` with ``omega_2(u*v, w) = omega_3(u, v, w)``."""
    if not (pi.in_kernel(u) and pi.in_kernel(v)):
        raise ElementNotInMaxIdeal("star product arguments must lie in K")
    ginv = _gram_inverse(A, pi)
    uv = A.mul(u, v)
    rhs = [pi.value(A.mul(uv, k)) for k in pi.kernel_basis]
    z = linalg.matvec(ginv, rhs)
    return pi.embed(z)


# Blaschke data ----------------------------------------------------------------


@dataclass(frozen=True)
class BlaschkeData:
    g: tuple
    h: tuple
    g_inv: tuple
    trace: tuple

    @property
    def is_normal_form(self):
        return not any(self.trace)


def blaschke_data(P):
    """Quadratic tensor ``g``, cubic tensor ``h`` and the trace ``g^{ij} h_ijl``."""
    poly = P.poly if isinstance(P, NilPolynomial) else P
    n = poly.nvars
    if n == 0:
        return BlaschkeData((), (), (), ())
    g = [[Fraction(0)] * n for _ in range(n)]
    h = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for e, c in poly.terms.items():
        deg = sum(e)
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        if deg == 2:
            i, j = idx
            if i == j:
                g[i][i] = c
            else:
                g[i][j] = g[j][i] = c / 2
        elif deg == 3:
            perms = {(a, b, cc) for a, b, cc in _arrangements(idx)}
            share = c / len(perms)
            for a, b, cc in perms:
                h[a][b][cc] = share
    try:
        ginv = linalg.inverse(g)
    except linalg.SingularMatrix:
        raise DegenerateQuadraticForm("quadratic part of the nil-polynomial is degenerate") from None
    trace = []
    for l in range(n):
        t = Fraction(0)
        for i in range(n):
            for j in range(n):
                if ginv[i][j] and h[i][j][l]:
                    t += ginv[i][j] * h[i][j][l]
        trace.append(t)
    return BlaschkeData(
        tuple(tuple(r) for r in g),
        tuple(tuple(tuple(r) for r in m) for m in h),
        tuple(tuple(r) for r in ginv),
        tuple(trace),
    )


def _arrangements(idx):
    a, b, c = idx
    return [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]


# translation ------------------------------------------------------------------


def translate_projection(pi, y):
    """Projection whose hypersurface is ``S_pi`` translated by ``-y``.

    The functional is ``a -> omega(exp(y) a)`` on the maximal ideal and 0 on 1.
    When ``y`` lies on ``S_pi`` this is exactly ``omega(exp(y) .)``; otherwise
    the hypersurface obtained is ``S_pi - y'`` with
    ``y' = y - (omega(exp y)/omega(s)) s`` (see :func:`translation_point`).
    """
    A = pi.algebra
    _check_in_m(y)
    ey = exp_element(A, y)
    omega = [pi.functional(A.mul(ey, A.basis_vector(j))) for j in range(A.dimension)]
    omega[0] = Fraction(0)
    return AdmissibleProjection.from_functional(A, omega, pi.socle)


def translation_point(pi, y):
    """The point ``y'`` on ``S_pi`` with ``S_pi - y' = S_{translate(pi, y)}``."""
    A = pi.algebra
    tau = pi.value(exp_element(A, y))
    return [a - tau * s for a, s in zip(y, pi.socle)]


def on_hypersurface(pi, v):
    """Whether ``v`` in m lies on ``S_pi``, i.e. ``omega(exp v) = 0``."""
    return pi.functional(exp_element(pi.algebra, v)) == 0


def graph_point(A, pi, alpha):
    """The point ``u + P(u) s`` of ``S_pi`` over ``u = sum alpha_i k_i``."""
    u = pi.embed(alpha)
    p = nil_value(A, pi, u)
    return [x + p * s for x, s in zip(u, pi.socle)]


def check_graph_translation(A, pi, y, alphas):
    """For each ``alpha``, check that ``graph_point - y'`` lies on the graph
    of the translated projection's nil-polynomial."""
    pi2 = translate_projection(pi, y)
    y2 = translation_point(pi, y)
    for alpha in alphas:
        p = graph_point(A, pi, alpha)
        q = [a - b for a, b in zip(p, y2)]
        alpha2, beta = pi2.decompose(q)
        if beta != nil_value(A, pi2, pi2.embed(alpha2)):
            return False
    return True

