"""Sparse multivariate polynomials with exact rational coefficients."""

from fractions import Fraction
from math import factorial

from ..errors import DimensionMismatch, VariableMismatch
from .order import GREVLEX


class _NegativeInfinity:
    """Degree of the zero polynomial.  Compares below every integer and
    refuses arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "-inf"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("NEG_INF")


NEG_INF = _NegativeInfinity()


def _clean(terms):
    return {tuple(e): Fraction(c) for e, c in terms.items() if c != 0}


class Polynomial:
    """Immutable polynomial: variable names plus ``{exponent tuple: Fraction}``.

    Two polynomials are equal iff they share variables and terms.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        n = len(self.vars)
        cleaned = _clean(terms or {})
        for e in cleaned:
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for variables {self.vars}")
        self.terms = cleaned
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms):
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, vars):
        return cls._raw(tuple(vars), {})

    @classmethod
    def constant(cls, vars, c):
        vars = tuple(vars)
        c = Fraction(c)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def one(cls, vars):
        return cls.constant(vars, 1)

    @classmethod
    def variable(cls, vars, name):
        vars = tuple(vars)
        i = vars.index(name) if isinstance(name, str) else name
        e = [0] * len(vars)
        e[i] = 1
        return cls._raw(vars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, vars, exp, coeff=1):
        vars = tuple(vars)
        coeff = Fraction(coeff)
        return cls._raw(vars, {tuple(exp): coeff} if coeff else {})

    @classmethod
    def linear_form(cls, vars, coeffs):
        n = len(vars)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = Fraction(c)
        return cls._raw(tuple(vars), terms)

    # basic queries --------------------------------------------------------

    @property
    def nvars(self):
        return len(self.vars)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def degree(self):
        """Total degree, or ``NEG_INF`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, i):
        if not self.terms:
            return NEG_INF
        return max(e[i] for e in self.terms)

    def support_variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return sorted(used)

    def leading_term(self, order=GREVLEX):
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def sorted_terms(self, order=GREVLEX, reverse=True):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=reverse)

    def is_homogeneous(self, weights=None):
        if weights is None:
            weights = (1,) * len(self.vars)
        degs = {sum(w * x for w, x in zip(weights, e)) for e in self.terms}
        return len(degs) <= 1

    # arithmetic -----------------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars:
            raise VariableMismatch(f"variable lists differ: {self.vars} vs {other.vars}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial._raw(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.vars)
        return Polynomial._raw(self.vars, {e: c * x for e, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return Polynomial._raw(self.vars, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.one(self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Polynomial.constant(self.vars, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # structure ------------------------------------------------------------

    def homogeneous_component(self, m, weights=None):
        if weights is None:
            terms = {e: c for e, c in self.terms.items() if sum(e) == m}
        else:
            terms = {e: c for e, c in self.terms.items()
                     if sum(w * x for w, x in zip(weights, e)) == m}
        return Polynomial._raw(self.vars, terms)

    def homogeneous_components(self):
        comps = {}
        for e, c in self.terms.items():
            comps.setdefault(sum(e), {})[e] = c
        return {d: Polynomial._raw(self.vars, t) for d, t in sorted(comps.items())}

    def diff(self, i, k=1):
        """k-th partial derivative with respect to variable index ``i``."""
        terms = {}
        for e, c in self.terms.items():
            if e[i] >= k:
                f = factorial(e[i]) // factorial(e[i] - k)
                ne = e[:i] + (e[i] - k,) + e[i + 1:]
                terms[ne] = c * f
        return Polynomial._raw(self.vars, terms)

    def evaluate(self, point):
        point = [Fraction(x) for x in point]
        if len(point) != len(self.vars):
            raise DimensionMismatch("point has wrong arity")
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def compose(self, images, vars=None):
        """Substitute polynomial ``images[i]`` for variable ``i``."""
        if len(images) != len(self.vars):
            raise DimensionMismatch("need one image per variable")
        if vars is None:
            vars = images[0].vars if images else ()
        vars = tuple(vars)
        powers = [{0: Polynomial.one(vars)} for _ in images]

        def power(i, k):
            cache = powers[i]
            top = max(cache)
            while top < k:
                cache[top + 1] = cache[top] * images[i]
                top += 1
            return cache[k]

        result = Polynomial.zero(vars)
        for e, c in self.terms.items():
            t = Polynomial.constant(vars, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            result = result + t
        return result

    def rename(self, vars):
        vars = tuple(vars)
        if len(vars) != len(self.vars):
            raise DimensionMismatch("renaming must preserve arity")
        return Polynomial._raw(vars, dict(self.terms))

    def extend(self, vars):
        """Embed into a ring whose variable list contains ours."""
        vars = tuple(vars)
        idx = [vars.index(v) for v in self.vars]
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, x in zip(idx, e):
                ne[i] = x
            terms[tuple(ne)] = c
        return Polynomial._raw(vars, terms)

    # printing -------------------------------------------------------------

    def monomial_str(self, exp):
        parts = []
        for v, k in zip(self.vars, exp):
            if k == 1:
                parts.append(v)
            elif k > 1:
                parts.append(f"{v}^{k}")
        return "*".join(parts) if parts else "1"

    def to_string(self, order=GREVLEX):
        if not self.terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self.sorted_terms(order)):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = self.monomial_str(e)
            if mono == "1":
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if i == 0:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.vars!r}, {self.to_string()!r})"


def poly_mul(p, q):
    """Exact product of two polynomials over the same variables."""
    return p * q


def substitute_linear(p, matrix):
    """Return ``p(M x)``: variable ``i`` becomes ``sum_j M[i][j] * x_j``.

    With this row convention ``substitute_linear(substitute_linear(p, M), N)``
    equals ``substitute_linear(p, M @ N)``.
    """
    n = len(p.vars)
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise DimensionMismatch(f"need a {n}x{n} matrix for {n} variables")
    forms = [Polynomial.linear_form(p.vars, row) for row in matrix]
    return p.compose(forms, p.vars)


def homogeneous_component(p, m):
    return p.homogeneous_component(m)


def apply_diff_operator(f, g):
    """Apply ``f(d/dy_1, ..., d/dy_k)`` to ``g``; variables pair up by position."""
    if len(f.vars) != len(g.vars):
        raise VariableMismatch(f"operator arity {len(f.vars)} != polynomial arity {len(g.vars)}")
    terms = {}
    for a, cf in f.terms.items():
        for b, cg in g.terms.items():
            if any(x > y for x, y in zip(a, b)):
                continue
            factor = 1
            for x, y in zip(a, b):
                if x:
                    factor *= factorial(y) // factorial(y - x)
            e = tuple(y - x for x, y in zip(a, b))
            s = terms.get(e, 0) + cf * cg * factor
            if s:
                terms[e] = s
            else:
                del terms[e]
    return Polynomial._raw(g.vars, terms)
