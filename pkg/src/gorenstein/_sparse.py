"""Sparse polynomials over many unknowns and the search used by isocheck.

A polynomial is a dict ``{mono: Fraction}`` where ``mono`` is a tuple of
``(variable index, exponent)`` pairs sorted by index.  Systems arising from
coefficient matching have a hundred or more unknowns but every equation
touches only a few of them, which dense exponent tuples handle poorly.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt, lcm

from .errors import BudgetExceeded
from .polycore import GREVLEX, Polynomial, groebner_basis


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mul(p, q):
    out = {}
    for ma, ca in p.items():
        for mb, cb in q.items():
            m = mono_mul(ma, mb)
            s = out.get(m, 0) + ca * cb
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def add_into(out, p, scale=1):
    for m, c in p.items():
        s = out.get(m, 0) + scale * c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def variables(p):
    return frozenset(v for m in p for v, _ in m)


def from_polynomial(poly, index):
    """Convert a dense :class:`Polynomial`; ``index[i]`` is the sparse index of variable ``i``."""
    out = {}
    for e, c in poly.terms.items():
        out[tuple(sorted((index[i], k) for i, k in enumerate(e) if k))] = c
    return out


def to_polynomial(p, names, order=None):
    """Dense polynomial over ``names``; ``order`` lists the sparse indices in that order."""
    order = list(range(len(names))) if order is None else list(order)
    pos = {v: i for i, v in enumerate(order)}
    terms = {}
    for m, c in p.items():
        e = [0] * len(names)
        for v, k in m:
            e[pos[v]] = k
        terms[tuple(e)] = c
    return Polynomial(tuple(names), terms)


def substitute_value(p, v, val):
    out = {}
    for m, c in p.items():
        k = 0
        rest = m
        for i, (u, e) in enumerate(m):
            if u == v:
                k = e
                rest = m[:i] + m[i + 1:]
                break
        if k:
            if not val:
                continue
            c = c * val ** k
        s = out.get(rest, 0) + c
        if s:
            out[rest] = s
        else:
            out.pop(rest, None)
    return out


def substitute_poly(p, v, q):
    out = {}
    powers = {0: {(): Fraction(1)}}
    for m, c in p.items():
        k = 0
        rest = m
        for i, (u, e) in enumerate(m):
            if u == v:
                k = e
                rest = m[:i] + m[i + 1:]
                break
        if k not in powers:
            top = max(powers)
            cur = powers[top]
            for j in range(top + 1, k + 1):
                cur = mul(cur, q)
                powers[j] = cur
        add_into(out, mul({rest: c}, powers[k]))
    return out


def evaluate(p, values):
    total = Fraction(0)
    for m, c in p.items():
        t = c
        for v, e in m:
            t *= values[v] ** e
        total += t
    return total


def normalized(p):
    """Scale so the coefficient of the smallest monomial is 1 (for deduplication)."""
    m = min(p)
    c = p[m]
    if c == 1:
        return p
    return {k: x / c for k, x in p.items()}


def freeze(p):
    return tuple(sorted(p.items()))


# rational roots -------------------------------------------------------------


_FACTOR_LIMIT = 10 ** 12


def _divisors(n):
    n = abs(n)
    if n > _FACTOR_LIMIT:
        return None
    out = set()
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.add(d)
            out.add(n // d)
    return out


def rational_roots(coeffs):
    """Rational roots of ``sum coeffs[k] x^k`` (distinct, sorted by size then sign).

    Returns ``None`` if the coefficients are too large to factor.
    """
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial")
    roots = set()
    low = 0
    while coeffs[low] == 0:
        low += 1
    if low:
        roots.add(Fraction(0))
    coeffs = coeffs[low:]
    if len(coeffs) > 1:
        den = 1
        for c in coeffs:
            den = lcm(den, Fraction(c).denominator)
        ints = [int(Fraction(c) * den) for c in coeffs]
        g = 0
        for x in ints:
            g = gcd(g, x)
        ints = [x // g for x in ints]
        ps = _divisors(ints[0])
        qs = _divisors(ints[-1])
        if ps is None or qs is None:
            return None
        for p in ps:
            for q in qs:
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if sum(c * cand ** k for k, c in enumerate(ints)) == 0:
                        roots.add(cand)
    return sorted(roots, key=lambda r: (abs(r), r < 0))


# search ---------------------------------------------------------------------


@dataclass
class Budget:
    """Limits for the satisfiability search."""

    seconds: float = 300.0
    max_nodes: int = 20000
    gb_pairs: int = 3000
    subset_vars: int = 6
    subset_tries: int = 400
    branch_depth: int = 6

    def start(self):
        return _Clock(self)


class _Clock:
    def __init__(self, budget):
        self.budget = budget
        self.deadline = time.monotonic() + budget.seconds
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes or time.monotonic() > self.deadline:
            raise BudgetExceeded("search budget exhausted")


class Contradiction(Exception):
    """A branch of the search has no solutions; ``reason`` says why."""

    def __init__(self, reason, equations=()):
        super().__init__(reason)
        self.reason = reason
        self.equations = equations


@dataclass
class State:
    """Equations plus what propagation has learned about the unknowns."""

    names: tuple
    eqs: list
    units: set = field(default_factory=set)
    values: dict = field(default_factory=dict)
    eliminated: list = field(default_factory=list)  # (var, expression) in elimination order
    assumptions: tuple = ()

    def copy(self):
        return State(self.names, list(self.eqs), set(self.units), dict(self.values),
                     list(self.eliminated), self.assumptions)

    def assign(self, v, val):
        self.values[v] = Fraction(val)
        self.eqs = [substitute_value(p, v, val) if v in variables(p) else p for p in self.eqs]
        self.units.discard(v)

    def eliminate(self, v, expr):
        self.eliminated.append((v, expr))
        self.eqs = [substitute_poly(p, v, expr) if v in variables(p) else p for p in self.eqs]
        self.units.discard(v)

    def show(self, p):
        return str(to_polynomial(p, self.names))


def _dedupe(eqs):
    seen = set()
    out = []
    for p in eqs:
        if not p:
            continue
        key = freeze(normalized(p))
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def propagate(state, max_elim_terms=12):
    """Simplify until nothing changes; raise :class:`Contradiction` on failure.

    Rules (each preserves the solution set over an algebraically closed field):
    a constant nonzero equation is inconsistent; in a two-term equation whose
    other term is a constant times known units, every variable of the first
    term is a unit; a single-term equation forces one of its non-unit
    variables to vanish, so it is inconsistent when all are units and fixes
    the variable to 0 when exactly one is not; a variable occurring only as a
    constant multiple of itself is solved for and eliminated.
    """
    changed = True
    while changed:
        changed = False
        state.eqs = _dedupe(state.eqs)
        for p in state.eqs:
            if len(p) == 1 and () in p:
                raise Contradiction("nonzero constant equation", (p,))
        # units
        for p in state.eqs:
            if len(p) != 2:
                continue
            (m1, _), (m2, _) = p.items()
            for a, b in ((m1, m2), (m2, m1)):
                if all(v in state.units for v, _ in b):
                    new = {v for v, _ in a} - state.units
                    if new:
                        state.units |= new
                        changed = True
        # single-term equations
        for p in state.eqs:
            if len(p) != 1:
                continue
            (m,) = p
            free = [v for v, _ in m if v not in state.units]
            if not free:
                raise Contradiction("a product of units vanishes", (p,))
            if len(free) == 1:
                state.assign(free[0], 0)
                changed = True
                break
        if changed:
            continue
        # linear elimination
        for p in state.eqs:
            if len(p) > max_elim_terms:
                continue
            for m, c in p.items():
                if len(m) != 1 or m[0][1] != 1:
                    continue
                v = m[0][0]
                if any(v == u for mm in p if mm != m for u, _ in mm):
                    continue
                expr = {mm: -cc / c for mm, cc in p.items() if mm != m}
                state.eliminate(v, expr)
                changed = True
                break
            if changed:
                break
    return state


def _branch_equation(state):
    """First single-term equation with at least two non-unit variables."""
    best = None
    for p in state.eqs:
        if len(p) == 1:
            (m,) = p
            free = [v for v, _ in m if v not in state.units]
            if len(free) >= 2 and (best is None or len(free) < len(best)):
                best = free
    return best


# refutation -------------------------------------------------------------------


@dataclass(frozen=True)
class Refutation:
    """Why a system has no solution: one entry per leaf of the case split.

    Each leaf is ``(assumptions, reason, equations)``; ``equations`` is a
    list of strings whose ideal (together with the recorded unit
    inverses) contains 1.
    """

    leaves: tuple


def refute(state, budget, clock=None, depth=0):
    """Try to prove the system inconsistent.

    Returns a :class:`Refutation` or ``None`` (nothing proved).  May raise
    :class:`BudgetExceeded`.
    """
    clock = clock or budget.start()
    clock.tick()
    state = state.copy()
    try:
        propagate(state)
    except Contradiction as exc:
        return Refutation(((state.assumptions, exc.reason, tuple(state.show(p) for p in exc.equations)),))
    leaf = _unit_subset(state, budget, clock)
    if leaf is not None:
        return Refutation(((state.assumptions,) + leaf,))
    if depth >= budget.branch_depth:
        return None
    free = _branch_equation(state)
    if free is None:
        return None
    leaves = []
    for v in free:
        sub = state.copy()
        sub.assumptions = state.assumptions + (f"{state.names[v]} = 0",)
        sub.assign(v, 0)
        r = refute(sub, budget, clock, depth + 1)
        if r is None:
            return None
        leaves.extend(r.leaves)
    return Refutation(tuple(leaves))


def _unit_subset(state, budget, clock):
    """Search small variable sets whose equations generate the unit ideal."""
    eqs = [(p, variables(p)) for p in state.eqs]
    small = sorted((vs for _, vs in eqs if len(vs) <= budget.subset_vars), key=lambda s: (len(s), sorted(s)))
    seeds = list(dict.fromkeys(small))
    cands = list(seeds)
    for a, b in combinations(seeds, 2):
        u = a | b
        if len(u) <= budget.subset_vars:
            cands.append(u)
    for a, b, c in combinations(seeds[:60], 3):
        u = a | b | c
        if len(u) <= budget.subset_vars:
            cands.append(u)
    cands = sorted(dict.fromkeys(cands), key=lambda s: (len(s), sorted(s)))
    tried = set()
    for vs in cands[: budget.subset_tries]:
        chosen = tuple(i for i, (_, pv) in enumerate(eqs) if pv <= vs)
        if not chosen or chosen in tried:
            continue
        tried.add(chosen)
        clock.tick()
        polys = [eqs[i][0] for i in chosen]
        used = sorted(set().union(*(eqs[i][1] for i in chosen)))
        units = [v for v in used if v in state.units]
        names = [state.names[v] for v in used] + [f"inv_{state.names[v]}" for v in units]
        order = used + [-1 - k for k in range(len(units))]
        gens = [to_polynomial(p, names, order) for p in polys]
        for k, v in enumerate(units):
            gens.append(to_polynomial({((v, 1), (-1 - k, 1)): Fraction(1), (): Fraction(-1)}, names, order))
        try:
            gb = groebner_basis(gens, GREVLEX, max_pairs=budget.gb_pairs, deadline=clock.deadline)
        except BudgetExceeded:
            continue
        if gb.is_unit_ideal():
            shown = [state.show(p) for p in polys]
            shown += [f"{state.names[v]} is a unit" for v in units]
            return ("Groebner basis of these equations is {1}", tuple(shown))
    return None


# witness search -------------------------------------------------------------


def _univariate(p):
    (v,) = variables(p)
    top = max(e for m in p for _, e in m)
    coeffs = [Fraction(0)] * (top + 1)
    for m, c in p.items():
        coeffs[m[0][1] if m else 0] += c
    return v, coeffs


def find_solution(state, trial_values, budget, clock=None, accept=None):
    """Depth-first search for a rational point.

    ``trial_values(name)`` lists the values tried when branching on a free
    unknown; univariate equations branch over their rational roots.
    ``accept(values)`` receives a full assignment and returns a result or
    ``None`` to keep searching.
    """
    clock = clock or budget.start()
    clock.tick()
    state = state.copy()
    try:
        propagate(state)
    except Contradiction:
        return None
    for p in state.eqs:
        if len(variables(p)) == 1 and len(p) > 1:
            v, coeffs = _univariate(p)
            roots = rational_roots(coeffs)
            if roots is None:
                raise BudgetExceeded("coefficients too large for the rational root search")
            for r in roots:
                sub = state.copy()
                sub.assign(v, r)
                found = find_solution(sub, trial_values, budget, clock, accept)
                if found is not None:
                    return found
            return None
    if not state.eqs:
        return accept(_complete(state))
    free = _branch_variable(state)
    for val in trial_values(state.names[free]):
        sub = state.copy()
        sub.assign(free, val)
        found = find_solution(sub, trial_values, budget, clock, accept)
        if found is not None:
            return found
    return None


def _branch_variable(state):
    best = None
    for p in state.eqs:
        vs = variables(p)
        key = (len(vs), min(vs))
        if best is None or key < best[0]:
            best = (key, vs)
    return min(best[1])


def _complete(state):
    """Values for every unknown: free ones are filled by ``_fill``, eliminated
    ones are recovered in reverse elimination order."""
    values = dict(state.values)
    gone = {v for v, _ in state.eliminated}
    for v in range(len(state.names)):
        if v not in values and v not in gone:
            values[v] = _fill(state.names[v])
    for v, expr in reversed(state.eliminated):
        values[v] = evaluate(expr, values)
    return values


def _fill(name):
    """Default for an unconstrained unknown: 1 on the diagonal of C, else 0."""
    parts = name.split("_")
    if len(parts) == 3 and parts[0] == "C" and parts[1] == parts[2]:
        return Fraction(1)
    if name in ("c", "w"):
        return Fraction(1)
    return Fraction(0)
