"""Isomorphism testing through linear equivalence of nil-polynomials.

Two Gorenstein algebras with admissible projections are isomorphic when
``c * P(alpha) = P~(C alpha)`` for an invertible matrix ``C`` and a nonzero
scalar ``c``; when one of them is non-negatively graded this condition is
also necessary.  The module offers cheap invariants, verification of
explicit candidates and substitutions, and a search over the unknown
entries of ``(C, c)`` that either finds a verified witness or proves that
no solution exists.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import _sparse, linalg
from .algebra import check_grading, filtration_level, find_grading, structure_report
from .errors import (
    BudgetExceeded,
    DegreeOutOfRange,
    DimensionMismatch,
    FingerprintMismatch,
    NotGorenstein,
    NotHomogeneous,
    SingularC,
    VariableMismatch,
)
from .nilpoly import default_projection, nil_polynomial
from .polycore import Polynomial, substitute_linear


# fingerprints -------------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    """Isomorphism invariants.

    ``top_form_profile[j]`` is the dimension of the span of all order-``j``
    partial derivatives of the top-degree component of the nil-polynomial.
    That component is ``-omega(u^nu)/(nu! omega(s))`` and ``u^nu`` lies in the
    socle, so it does not depend on the projection beyond a scalar; the
    profile is unchanged by invertible linear substitutions.
    """

    dimension: int
    nil_index: int
    embedding_dimension: int
    filtration: tuple
    top_form_profile: tuple

    def differences(self, other):
        out = []
        for name in ("dimension", "nil_index", "embedding_dimension", "filtration", "top_form_profile"):
            a, b = getattr(self, name), getattr(other, name)
            if a != b:
                out.append((name, a, b))
        return out


def _derivative_profile(poly):
    profile = []
    level = [poly]
    while level:
        mons = sorted({e for p in level for e in p.terms})
        index = {e: i for i, e in enumerate(mons)}
        rows = []
        for p in level:
            row = [Fraction(0)] * len(mons)
            for e, c in p.terms.items():
                row[index[e]] = c
            rows.append(row)
        reduced, pivots = linalg.rref(rows, len(mons))
        basis = [_row_poly(r, mons, poly.vars) for r in reduced[:len(pivots)]]
        profile.append(len(basis))
        level = [q for p in basis for q in (p.diff(i) for i in range(p.nvars)) if not q.is_zero()]
    return tuple(profile)


def _row_poly(row, mons, vars):
    return Polynomial(vars, {e: c for e, c in zip(mons, row) if c})


def invariant_fingerprint(A, pi=None):
    rep = structure_report(A)
    if not rep.is_gorenstein:
        raise NotGorenstein(f"socle has dimension {rep.socle_dimension}")
    pi = pi or default_projection(A)
    top = nil_polynomial(A, pi).component(rep.nil_index)
    profile = _derivative_profile(top) if not top.is_zero() else ()
    return Fingerprint(rep.dimension, rep.nil_index, rep.embedding_dimension,
                       rep.filtration, profile)


# candidates -------------------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceCandidate:
    """``alpha~ = C alpha`` on kernel coordinates and ``beta~ = c beta`` on the socle."""

    C: tuple
    c: Fraction
    substitution: object = None

    @classmethod
    def make(cls, C, c, substitution=None):
        return cls(tuple(tuple(Fraction(x) for x in row) for row in C), Fraction(c), substitution)

    @classmethod
    def identity(cls, n):
        return cls.make(linalg.identity(n), 1)


def _check_shapes(P, Pt, cand):
    n = len(P.vars)
    if len(Pt.vars) != n:
        raise DimensionMismatch(f"kernels have dimensions {n} and {len(Pt.vars)}")
    if len(cand.C) != n or any(len(r) != n for r in cand.C):
        raise DimensionMismatch(f"C must be {n}x{n}")
    if cand.c == 0:
        raise SingularC("the socle scalar c must be nonzero")
    if n and linalg.det(cand.C) == 0:
        raise SingularC("C is not invertible")


def verify_linear_equivalence(A, pi, At, pit, cand):
    """Whether ``c * P_pi(alpha) == P_pit(C alpha)`` exactly."""
    P = nil_polynomial(A, pi).poly
    Pt = nil_polynomial(At, pit).poly
    _check_shapes(P, Pt, cand)
    if not P.vars:
        return True
    return P.scale(cand.c) == substitute_linear(Pt.rename(P.vars), cand.C)


def induced_linear_map(A, pi, At, pit, cand):
    """Matrix (target coordinates x source coordinates) of the map
    ``1 -> 1``, ``u + beta s -> L1(u) + c beta s~``."""
    d = A.dimension
    if At.dimension != d:
        raise DimensionMismatch("algebras have different dimensions")
    cols = [At.unit()]
    for j in range(1, d):
        alpha, beta = pi.decompose(A.basis_vector(j))
        image = pit.embed(linalg.matvec(cand.C, alpha))
        image = [x + cand.c * beta * s for x, s in zip(image, pit.socle)]
        cols.append(image)
    return linalg.transpose(cols, d)


def _random_max_ideal_element(A, rng, spread=3):
    v = [Fraction(rng.randint(-spread, spread)) for _ in range(A.dimension)]
    v[0] = Fraction(0)
    return v


def is_multiplicative(A, At, M, trials=100, seed=0):
    """Check ``M(uv) == M(u) M(v)`` for random pairs in the maximal ideal."""
    rng = random.Random(seed)
    for _ in range(trials):
        u = _random_max_ideal_element(A, rng)
        v = _random_max_ideal_element(A, rng)
        if linalg.matvec(M, A.mul(u, v)) != At.mul(linalg.matvec(M, u), linalg.matvec(M, v)):
            return False
    return True


# substitutions ----------------------------------------------------------------


def _images(A, At, subst):
    if isinstance(subst, dict):
        if set(subst) != set(A.vars):
            raise VariableMismatch(f"substitution must give images for exactly {A.vars}")
        images = [subst[v] for v in A.vars]
    else:
        images = list(subst)
        if len(images) != len(A.vars):
            raise VariableMismatch(f"need {len(A.vars)} images, got {len(images)}")
    for p in images:
        if p.vars != At.vars:
            raise VariableMismatch("images must be polynomials in the target variables")
    return images


def morphism_matrix(A, At, subst):
    """Matrix (target coords x source coords) of the linear map induced on bases."""
    images = _images(A, At, subst)
    cols = [At.coords(b.compose(images, At.vars)) for b in A.basis]
    return linalg.transpose(cols, At.dimension)


def verify_algebra_morphism(A, At, subst):
    """True iff the substitution sends every generator of ``A``'s ideal into
    the ideal of ``At`` and induces a bijection ``A -> At``."""
    images = _images(A, At, subst)
    for g in A.generators:
        if any(At.coords(g.compose(images, At.vars))):
            return False
    if A.dimension != At.dimension:
        return False
    return linalg.rank(morphism_matrix(A, At, images), A.dimension) == A.dimension


def candidate_from_morphism(A, pi, At, pit, subst):
    """The (C, c) induced by an algebra isomorphism, or ``None`` when it does
    not carry ``ker pi`` onto ``ker pit``."""
    M = morphism_matrix(A, At, subst)
    C_cols = []
    for k in pi.kernel_basis:
        alpha, beta = pit.decompose(linalg.matvec(M, k))
        if beta != 0:
            return None
        C_cols.append(alpha)
    n = pi.n
    C = linalg.transpose(C_cols, n) if n else []
    c = pit.value(linalg.matvec(M, list(pi.socle)))
    return EquivalenceCandidate.make(C, c, substitution=subst)


# constraint systems -----------------------------------------------------------


def _levels(A, pi):
    return [filtration_level(A, list(k)) for k in pi.kernel_basis]


def _adapted(A, pi, levels):
    """Kernel basis elements of level >= l span m^l ∩ K for every l."""
    filt = structure_report(A).filtration
    return all(sum(1 for x in levels if x >= l) == filt[l - 1] - 1 for l in range(1, len(filt) + 1))


def _graded(A, weights=None):
    weights = weights or find_grading(A)
    if weights is None:
        return None
    try:
        check_grading(A, weights)
    except NotHomogeneous:
        return None
    return tuple(weights)


def _single_pure_power(poly):
    if len(poly.terms) != 1:
        return None
    ((e, c),) = poly.terms.items()
    nz = [i for i, k in enumerate(e) if k]
    if len(nz) != 1:
        return None
    return nz[0], c


class ConstraintSystem:
    """Polynomial equations in the unknown entries of ``C``, ``c`` and an
    auxiliary ``w`` with ``c*w = 1``.

    Every equation is the coefficient of one monomial of
    ``c * P^[m](alpha) - P~^[m](C alpha)`` for ``m`` in ``degrees``.
    Entries of ``C`` that would map a kernel element of filtration level
    ``l`` outside ``m~^l`` are omitted (when the target basis is adapted to
    the filtration) or constrained by linear equations (otherwise).
    """

    def __init__(self, source, target, degrees, unknowns, entries, sparse, notes, graded):
        self.source = source
        self.target = target
        self.degrees = tuple(degrees)
        self.unknowns = tuple(unknowns)
        self.entries = tuple(entries)
        self._sparse = list(sparse)
        self.notes = tuple(notes)
        self.graded = graded
        self._equations = None

    @property
    def n(self):
        return self.source[1].n

    @property
    def equations(self):
        if self._equations is None:
            self._equations = tuple(_sparse.to_polynomial(p, self.unknowns) for p in self._sparse)
        return self._equations

    def candidate(self, values):
        """Build the candidate encoded by a full assignment of the unknowns."""
        n = self.n
        C = [[Fraction(0)] * n for _ in range(n)]
        for k, (i, j) in enumerate(self.entries):
            C[i][j] = values[k]
        return EquivalenceCandidate.make(C, values[len(self.entries)])

    def with_degrees(self, degrees):
        (A, pi, _), (At, pit, _) = self.source, self.target
        return equivalence_constraint_system(A, pi, At, pit, degrees,
                                             weights=self.source[2], target_weights=self.target[2])

    def __repr__(self):
        return (f"ConstraintSystem(degrees={self.degrees}, unknowns={len(self.unknowns)}, "
                f"equations={len(self._sparse)})")


def default_degrees(nu):
    return tuple(m for m in (nu, nu - 1, nu - 2) if m >= 2)


def equivalence_constraint_system(A, pi, At, pit, degrees=None, weights=None, target_weights=None):
    """Coefficient-matching equations for ``c * P_pi(alpha) = P_pit(C alpha)``."""
    fa, fb = invariant_fingerprint(A, pi), invariant_fingerprint(At, pit)
    diffs = fa.differences(fb)
    if diffs:
        raise FingerprintMismatch("fingerprints differ: " + ", ".join(d[0] for d in diffs), diffs)
    nu = fa.nil_index
    degrees = default_degrees(nu) if degrees is None else tuple(sorted(set(degrees), reverse=True))
    for m in degrees:
        if not 2 <= m <= nu:
            raise DegreeOutOfRange(f"degree {m} outside 2..{nu}")
    P = nil_polynomial(A, pi).poly
    Pt = nil_polynomial(At, pit).poly.rename(P.vars)
    n = pi.n
    src_levels, tgt_levels = _levels(A, pi), _levels(At, pit)
    adapted = _adapted(At, pit, tgt_levels)
    notes = []
    allowed = [[(not adapted) or src_levels[j] <= tgt_levels[i] for j in range(n)] for i in range(n)]
    if not adapted:
        notes.append("target kernel basis is not adapted to the filtration; using linear constraints")

    # A degree where both sides are a single pure power forces the row shape.
    for m in degrees:
        lhs = _single_pure_power(P.homogeneous_component(m))
        rhs = _single_pure_power(Pt.homogeneous_component(m))
        if lhs and rhs:
            l, k = lhs[0], rhs[0]
            for j in range(n):
                if j != l:
                    allowed[k][j] = False
            notes.append(f"degree {m}: row {k + 1} of C is a multiple of e_{l + 1}")

    entries = [(i, j) for i in range(n) for j in range(n) if allowed[i][j]]
    unknowns = [f"C_{i + 1}_{j + 1}" for i, j in entries] + ["c", "w"]
    u = len(unknowns)
    c_idx, w_idx = u - 2, u - 1
    # sparse indices: unknowns 0..u-1, alpha_j is u + j
    rows = [dict() for _ in range(n)]
    for k, (i, j) in enumerate(entries):
        rows[i][((k, 1), (u + j, 1))] = Fraction(1)
    alpha_index = [u + j for j in range(n)]

    eqs = []
    for m in degrees:
        diff = {}
        _sparse.add_into(diff, _sparse.mul({((c_idx, 1),): Fraction(1)},
                                           _sparse.from_polynomial(P.homogeneous_component(m), alpha_index)))
        _sparse.add_into(diff, _expand(Pt.homogeneous_component(m), rows), -1)
        eqs.extend(_split_by_alpha(diff, u))
    if not adapted:
        eqs.extend(_filtration_equations(At, pit, entries, src_levels, n))
    eqs.append({((c_idx, 1), (w_idx, 1)): Fraction(1), (): Fraction(-1)})
    graded = (_graded(A, weights), _graded(At, target_weights))
    return ConstraintSystem((A, pi, weights), (At, pit, target_weights), degrees, unknowns,
                            entries, eqs, notes, graded)


def _expand(poly, rows):
    """``poly(row_1 . alpha, ..., row_n . alpha)`` in sparse form."""
    out = {}
    cache = {}
    for e, c in poly.terms.items():
        term = {(): c}
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in cache:
                    p = {(): Fraction(1)}
                    for _ in range(k):
                        p = _sparse.mul(p, rows[i])
                    cache[key] = p
                term = _sparse.mul(term, cache[key])
        _sparse.add_into(out, term)
    return out


def _split_by_alpha(diff, u):
    groups = {}
    for m, c in diff.items():
        cut = next((i for i, (v, _) in enumerate(m) if v >= u), len(m))
        g = groups.setdefault(m[cut:], {})
        g[m[:cut]] = g.get(m[:cut], 0) + c
    return [g for _, g in sorted(groups.items()) if any(g.values())]


def _filtration_equations(At, pit, entries, src_levels, n):
    """Linear conditions ``C e_j in m~^l`` for source elements of level ``l``."""
    rep = structure_report(At)
    out = []
    for level in range(2, rep.nil_index + 1):
        basis = rep.filtration_bases[level - 1]
        funcs = linalg.kernel([list(b) for b in basis], At.dimension)
        for j in range(n):
            if src_levels[j] < level:
                continue
            col = [(k, i) for k, (i, jj) in enumerate(entries) if jj == j]
            for f in funcs:
                eq = {}
                for k, i in col:
                    val = sum(a * b for a, b in zip(f, pit.kernel_basis[i]))
                    if val:
                        eq[((k, 1),)] = eq.get(((k, 1),), 0) + val
                if eq:
                    out.append(eq)
    return out


# decisions --------------------------------------------------------------------


@dataclass(frozen=True)
class Infeasible:
    """No ``(C, c)`` satisfies the equations of ``degrees``."""

    degrees: tuple
    refutation: object


@dataclass(frozen=True)
class Witness:
    candidate: EquivalenceCandidate
    degrees: tuple


@dataclass(frozen=True)
class Unknown:
    reason: str
    degrees: tuple = ()


def _trial_values(name):
    if name.startswith("C_"):
        _, i, j = name.split("_")
        if i == j:
            return [Fraction(1), Fraction(-1), Fraction(2), Fraction(-2)]
        return [Fraction(0), Fraction(1), Fraction(-1)]
    return [Fraction(1), Fraction(-1)]


def _state(sys):
    return _sparse.State(sys.unknowns, [dict(p) for p in sys._sparse])


def refute_system(sys, budget=None):
    """A :class:`_sparse.Refutation` for ``sys`` or ``None``."""
    budget = budget or _sparse.Budget()
    try:
        return _sparse.refute(_state(sys), budget)
    except BudgetExceeded:
        return None


def search_witness(sys, budget=None):
    """Look for a rational solution of ``sys`` that is a verified equivalence."""
    budget = budget or _sparse.Budget()
    (A, pi, _), (At, pit, _) = sys.source, sys.target

    def accept(values):
        cand = sys.candidate([values[k] for k in range(len(sys.unknowns))])
        try:
            ok = verify_linear_equivalence(A, pi, At, pit, cand)
        except SingularC:
            return None
        return cand if ok else None

    return _sparse.find_solution(_state(sys), _trial_values, budget, accept=accept)


def decide_constraint_satisfiability(sys, budget=None):
    """Return :class:`Infeasible`, :class:`Witness` or :class:`Unknown`.

    Refutation uses the equations of ``sys.degrees``; witnesses are searched
    on the system of all degrees and verified before being returned.
    Infeasibility is reported only when both algebras are graded, because
    only then is a linear equivalence necessary for isomorphism.
    """
    budget = budget or _sparse.Budget()
    refutation = refute_system(sys, budget)
    if refutation is not None:
        if all(sys.graded):
            return Infeasible(sys.degrees, refutation)
        return Unknown("equations are inconsistent but no grading was found, so affine "
                       "equivalences are not excluded", sys.degrees)
    nu = structure_report(sys.source[0]).nil_index
    full = sys if set(sys.degrees) == set(range(2, nu + 1)) else sys.with_degrees(range(2, nu + 1))
    try:
        cand = search_witness(full, budget)
    except BudgetExceeded as exc:
        return Unknown(str(exc), sys.degrees)
    if cand is not None:
        return Witness(cand, full.degrees)
    return Unknown("no rational solution found", sys.degrees)


# top level --------------------------------------------------------------------


@dataclass(frozen=True)
class IsomorphismVerdict:
    status: str  # "ISOMORPHIC", "NOT_ISOMORPHIC" or "UNKNOWN"
    detail: object
    fingerprints: tuple = field(default=())
    notes: tuple = ()


def decide_isomorphism(A, At, degrees=None, weights=None, target_weights=None, budget=None):
    """Full workflow with default projections on both sides."""
    pi, pit = default_projection(A), default_projection(At)
    fa, fb = invariant_fingerprint(A, pi), invariant_fingerprint(At, pit)
    if fa.differences(fb):
        return IsomorphismVerdict("NOT_ISOMORPHIC", fa.differences(fb), (fa, fb))
    if pi.n == 0:
        return IsomorphismVerdict("ISOMORPHIC", Witness(EquivalenceCandidate.make([], 1), ()), (fa, fb))
    sys = equivalence_constraint_system(A, pi, At, pit, degrees, weights, target_weights)
    decision = decide_constraint_satisfiability(sys, budget)
    status = {Infeasible: "NOT_ISOMORPHIC", Witness: "ISOMORPHIC", Unknown: "UNKNOWN"}[type(decision)]
    return IsomorphismVerdict(status, decision, (fa, fb), sys.notes)
