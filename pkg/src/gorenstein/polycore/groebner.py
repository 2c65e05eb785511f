"""Buchberger's algorithm, normal forms and standard monomials.

Pairs are processed by the normal strategy (smallest lcm in the term order,
ties broken by insertion index) and pruned with the Gebauer-Moeller
criteria.  Reduced bases are stored monic and sorted by leading monomial.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from ..errors import BudgetExceeded, InfiniteDimensional, VariableMismatch
from .order import GREVLEX
from .polynomial import Polynomial


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b):
    return not any(x and y for x, y in zip(a, b))


class _Reducer:
    """Division by a fixed list of monic dict-polynomials."""

    def __init__(self, key):
        self.key = key
        self._cache = {}
        self.divisors = []  # (lead exp, poly dict)

    def k(self, e):
        v = self._cache.get(e)
        if v is None:
            v = self._cache[e] = self.key(e)
        return v

    def lead(self, p):
        return max(p, key=self.k)

    def find(self, e):
        for lm, g in self.divisors:
            if _divides(lm, e):
                return lm, g
        return None

    def reduce(self, p, full=True):
        """Normal form of dict polynomial ``p``; top-reduction only if not full."""
        p = dict(p)
        rem = {}
        while p:
            e = self.lead(p)
            c = p[e]
            hit = self.find(e)
            if hit is None:
                if not full:
                    rem.update(p)
                    return rem
                rem[e] = c
                del p[e]
                continue
            lm, g = hit
            shift = tuple(x - y for x, y in zip(e, lm))
            for ge, gc in g.items():
                ne = tuple(a + b for a, b in zip(ge, shift))
                s = p.get(ne, 0) - c * gc
                if s:
                    p[ne] = s
                else:
                    p.pop(ne, None)
        return rem


def _monic(p, lead):
    c = p[lead]
    if c == 1:
        return p
    inv = 1 / c
    return {e: x * inv for e, x in p.items()}


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis together with the generators it came from."""

    order: object
    basis: tuple
    generators: tuple = field(default=())

    @property
    def vars(self):
        if self.basis:
            return self.basis[0].vars
        return self.generators[0].vars

    def leading_monomials(self):
        return [p.leading_term(self.order)[0] for p in self.basis]

    def is_unit_ideal(self):
        return len(self.basis) == 1 and self.basis[0].is_constant() and not self.basis[0].is_zero()

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.order == other.order and self.basis == other.basis

    def __hash__(self):
        return hash((self.order, self.basis))


def groebner_basis(gens, order=GREVLEX, max_pairs=None, deadline=None):
    """Reduced Groebner basis of the ideal generated by ``gens``.

    ``max_pairs`` / ``deadline`` (a ``time.monotonic()`` value) bound the work;
    exceeding them raises :class:`BudgetExceeded`.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    vars = gens[0].vars
    for g in gens:
        if g.vars != vars:
            raise VariableMismatch("generators use different variable lists")

    red = _Reducer(order.key)
    polys = []  # all polynomials ever added, by index
    leads = []
    basis_idx = []  # indices currently in G
    pairs = []  # (lcm key, lcm, i, j)

    def update(h):
        nonlocal basis_idx, pairs
        lh = leads[h]
        todo = [(g, _lcm(lh, leads[g])) for g in basis_idx]
        keep = []
        while todo:
            g, l = todo.pop(0)
            if (_coprime(lh, leads[g])
                    or not (any(_divides(l2, l) for _, l2 in todo)
                            or any(_divides(l2, l) for _, l2 in keep))):
                keep.append((g, l))
        new_pairs = [(red.k(l), l, g, h) for g, l in keep if not _coprime(lh, leads[g])]
        kept_old = []
        for entry in pairs:
            _, l, i, j = entry
            if _divides(lh, l) and _lcm(leads[i], lh) != l and _lcm(leads[j], lh) != l:
                continue
            kept_old.append(entry)
        pairs = kept_old + new_pairs
        basis_idx = [g for g in basis_idx if not _divides(lh, leads[g])] + [h]

    def add(p):
        lead = red.lead(p)
        p = _monic(p, lead)
        polys.append(p)
        leads.append(lead)
        h = len(polys) - 1
        update(h)
        red.divisors = [(leads[g], polys[g]) for g in basis_idx]
        return h

    # Seed with interreduced generators so the start is deterministic.
    for g in gens:
        p = red.reduce(g.terms)
        if p:
            if all(not any(e) for e in p):
                return GroebnerBasis(order, (Polynomial.one(vars),), tuple(gens))
            add(p)

    processed = 0
    while pairs:
        pairs.sort(key=lambda t: (t[0], t[2], t[3]))
        _, l, i, j = pairs.pop(0)
        processed += 1
        if max_pairs is not None and processed > max_pairs:
            raise BudgetExceeded(f"Groebner basis exceeded {max_pairs} pairs")
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded("Groebner basis exceeded its time budget")
        s = _spoly(polys[i], leads[i], polys[j], leads[j], l)
        r = red.reduce(s)
        if r:
            if all(not any(e) for e in r):
                return GroebnerBasis(order, (Polynomial.one(vars),), tuple(gens))
            add(r)

    return GroebnerBasis(order, _interreduce([polys[g] for g in basis_idx], order, vars), tuple(gens))


def _spoly(f, lf, g, lg, l):
    sf = tuple(a - b for a, b in zip(l, lf))
    sg = tuple(a - b for a, b in zip(l, lg))
    out = {}
    for e, c in f.items():
        ne = tuple(a + b for a, b in zip(e, sf))
        out[ne] = out.get(ne, 0) + c
    for e, c in g.items():
        ne = tuple(a + b for a, b in zip(e, sg))
        s = out.get(ne, 0) - c
        if s:
            out[ne] = s
        else:
            out.pop(ne, None)
    return {e: c for e, c in out.items() if c}


def _interreduce(polys, order, vars):
    red = _Reducer(order.key)
    items = [(red.lead(p), p) for p in polys]
    minimal = [(l, p) for l, p in items
               if not any(_divides(l2, l) and (l2 != l or id(p2) < id(p)) for l2, p2 in items if p2 is not p)]
    out = []
    for l, p in minimal:
        red.divisors = [(l2, p2) for l2, p2 in minimal if p2 is not p]
        tail = {e: c for e, c in p.items() if e != l}
        r = red.reduce(tail)
        r[l] = p[l]
        out.append((l, _monic(r, l)))
    out.sort(key=lambda t: order.key(t[0]))
    return tuple(Polynomial._raw(vars, p) for _, p in out)


def normal_form(p, gb):
    """Remainder of ``p`` on division by the reduced basis ``gb``."""
    if gb.basis and p.vars != gb.vars:
        raise VariableMismatch("polynomial and basis use different variables")
    red = _Reducer(gb.order.key)
    red.divisors = [(q.leading_term(gb.order)[0], q.terms) for q in gb.basis]
    return Polynomial._raw(p.vars, red.reduce(p.terms))


def reducer_for(gb):
    """A reusable fast normal-form function ``dict -> dict`` for ``gb``."""
    red = _Reducer(gb.order.key)
    red.divisors = [(q.leading_term(gb.order)[0], q.terms) for q in gb.basis]
    return red.reduce


def standard_monomial_basis(gb):
    """Monomials outside the leading-term ideal, in increasing term order."""
    leads = gb.leading_monomials()
    n = len(gb.vars)
    if any(not any(e) for e in leads):
        return []
    bounds = []
    for i in range(n):
        pure = [e[i] for e in leads if e[i] and all(x == 0 for j, x in enumerate(e) if j != i)]
        if not pure:
            raise InfiniteDimensional(f"no pure power of {gb.vars[i]} among leading terms")
        bounds.append(min(pure))
    mons = [e for e in product(*(range(b) for b in bounds))
            if not any(_divides(l, e) for l in leads)]
    mons.sort(key=gb.order.key)
    return mons


def ideal_contains(gb, p):
    return normal_form(p, gb).is_zero()


def unit_ideal_basis(vars, order=GREVLEX):
    return GroebnerBasis(order, (Polynomial.constant(vars, Fraction(1)),), ())
