"""Command line interface.

Algebra files are plain ``key = value`` text::

    # A_1
    vars = x, y
    gens = 2*x^3 + x*y^3, x^2*y^2 + 2*y^5
    order = grevlex            # optional: grevlex | lex | weighted:3,2
    basis = 1, x, y, x^2, ...  # optional custom basis
    weights = 3, 2             # optional grading weights

Lists are comma separated; ``#`` starts a comment.  Reports are a single
object whose rationals are written as ``"p/q"`` strings.  Exit codes: 0
success or isomorphic, 1 not isomorphic, 2 parse or input error,
3 infinite-dimensional, 4 not local, 5 not Gorenstein, 6 bad complement,
7 unknown.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .algebra import build_quotient_algebra, check_grading, find_grading, structure_report
from .errors import (
    DegenerateQuadraticForm,
    DimensionMismatch,
    GorensteinError,
    ImproperIdeal,
    InfiniteDimensional,
    NotAComplement,
    NotGorenstein,
    NotHomogeneous,
    NotLocal,
    ParseError,
    SingularBasis,
    SingularC,
    VariableMismatch,
)
from .invsys import (
    default_complement,
    relation_ideal,
    restrict_nil_polynomial,
    verify_inverse_system,
    verify_relations,
)
from .isocheck import (
    EquivalenceCandidate,
    Infeasible,
    Unknown,
    Witness,
    candidate_from_morphism,
    decide_constraint_satisfiability,
    equivalence_constraint_system,
    induced_linear_map,
    invariant_fingerprint,
    is_multiplicative,
    verify_algebra_morphism,
    verify_linear_equivalence,
)
from .nilpoly import (
    blaschke_data,
    check_graph_translation,
    default_projection,
    nil_polynomial,
    translate_projection,
    translation_point,
)
from .polycore import GREVLEX, TermOrder, parse_polynomial

EXIT_OK = 0
EXIT_NOT_ISOMORPHIC = 1
EXIT_PARSE = 2
EXIT_INFINITE = 3
EXIT_NOT_LOCAL = 4
EXIT_NOT_GORENSTEIN = 5
EXIT_BAD_COMPLEMENT = 6
EXIT_UNKNOWN = 7


class InputError(GorensteinError):
    """Malformed input file or option."""


# input files ------------------------------------------------------------------


ALGEBRA_KEYS = ("vars", "gens", "order", "basis", "weights")


def read_key_values(path, allowed=None):
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    out = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if allowed is not None and key not in allowed:
            raise InputError(f"{path}:{lineno}: unknown key {key!r}")
        if key in out:
            raise InputError(f"{path}:{lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def split_list(text):
    return [s.strip() for s in text.split(",") if s.strip()]


class AlgebraFile:
    """Parsed contents of an algebra file."""

    def __init__(self, vars, gens, order=None, basis=None, weights=None, path=None):
        self.vars = tuple(vars)
        self.gens = list(gens)
        self.order = order
        self.basis = basis
        self.weights = weights
        self.path = path

    @classmethod
    def load(cls, path):
        kv = read_key_values(path, ALGEBRA_KEYS)
        for key in ("vars", "gens"):
            if key not in kv:
                raise InputError(f"{path}: missing key {key!r}")
        vars = split_list(kv["vars"])
        if not vars or len(set(vars)) != len(vars):
            raise InputError(f"{path}: variable names must be distinct and non-empty")
        for v in vars:
            if not v.isidentifier():
                raise InputError(f"{path}: invalid variable name {v!r}")
        gens = [parse_polynomial(g, vars) for g in split_list(kv["gens"])]
        if not gens:
            raise InputError(f"{path}: no generators")
        order = parse_order(kv["order"]) if "order" in kv else None
        basis = [parse_polynomial(b, vars) for b in split_list(kv["basis"])] if "basis" in kv else None
        weights = None
        if "weights" in kv:
            try:
                weights = tuple(int(w) for w in split_list(kv["weights"]))
            except ValueError:
                raise InputError(f"{path}: weights must be integers") from None
        return cls(vars, gens, order, basis, weights, path)

    def build(self, order=None, basis=None):
        return build_quotient_algebra(self.gens, order or self.order or GREVLEX,
                                      custom_basis=basis if basis is not None else self.basis)


def parse_order(text):
    try:
        return TermOrder.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def read_basis_file(path, vars):
    """Polynomials separated by commas or newlines; a ``basis = ...`` line also works."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    items = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line.startswith("basis") and "=" in line:
            line = line.split("=", 1)[1]
        items.extend(split_list(line))
    return [parse_polynomial(b, vars) for b in items]


def read_polynomial_file(path, vars):
    """A bare polynomial in ``vars``, or ``vars = ...`` and ``g = ...`` lines
    naming its own variables (paired with ``vars`` by position)."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if any("=" in line.split("#", 1)[0] for line in text.splitlines()):
        kv = read_key_values(path, ("vars", "g"))
        if "g" not in kv:
            raise InputError(f"{path}: missing key 'g'")
        own = split_list(kv.get("vars", ",".join(vars)))
        if len(own) != len(vars):
            raise InputError(f"{path}: {len(own)} variables declared, the algebra has {len(vars)}")
        return parse_polynomial(kv["g"], own).rename(vars)
    body = " ".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    return parse_polynomial(body, vars)


def read_candidate(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        C = [[Fraction(x) for x in row] for row in data["C"]]
        c = Fraction(data["c"])
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: expected JSON {{\"C\": [[...]], \"c\": \"p/q\"}} ({exc})") from None
    return EquivalenceCandidate.make(C, c)


def read_substitution(path, source_vars, target_vars):
    kv = read_key_values(path)
    unknown = set(kv) - set(source_vars)
    if unknown:
        raise InputError(f"{path}: unknown source variables {sorted(unknown)}")
    missing = [v for v in source_vars if v not in kv]
    if missing:
        raise InputError(f"{path}: no image for {missing}")
    return {v: parse_polynomial(kv[v], target_vars) for v in source_vars}


# serialization ------------------------------------------------------------------


def q(x):
    """Exact rational as a string: ``"p/q"`` or ``"p"`` for integers."""
    return str(Fraction(x))


def vector(v):
    return [q(x) for x in v]


def element(A, v):
    return A.describe(v)


def poly_terms(poly):
    """Terms sorted by degree, then by the graded reverse lexicographic order."""
    key = GREVLEX.key
    ordered = sorted(poly.terms.items(), key=lambda t: (sum(t[0]), key(t[0])))
    return [[poly.monomial_str(e), q(c)] for e, c in ordered]


def structure_section(A, fa):
    rep = structure_report(A)
    out = {
        "vars": list(A.vars),
        "generators": [str(g) for g in A.generators],
        "order": A.order.describe(),
        "basis": A.basis_labels(),
        "dimension": rep.dimension,
        "local": rep.is_local,
        "gorenstein": rep.is_gorenstein,
        "socle_dimension": rep.socle_dimension,
        "nil_index": rep.nil_index,
        "embedding_dimension": rep.embedding_dimension,
        "filtration": list(rep.filtration),
        "socle_generator": element(A, rep.socle_basis[0]) if rep.socle_dimension == 1 else None,
    }
    out["grading"] = grading_section(A, fa.weights)
    return out


def grading_section(A, weights):
    source = "file"
    if weights is None:
        weights = find_grading(A)
        source = "search"
    if weights is None:
        return {"graded": False, "weights": None, "source": source, "dims": {}}
    try:
        g = check_grading(A, weights)
    except (NotHomogeneous, ValueError) as exc:
        return {"graded": False, "weights": list(weights), "source": source, "reason": str(exc), "dims": {}}
    return {"graded": True, "weights": list(g.weights), "source": source,
            "dims": {str(w): d for w, d in g.dims}}


def fingerprint_section(fp):
    return {
        "dimension": fp.dimension,
        "nil_index": fp.nil_index,
        "embedding_dimension": fp.embedding_dimension,
        "filtration": list(fp.filtration),
        "top_form_profile": list(fp.top_form_profile),
    }


def render_text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _flat_list(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v):
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit(report, as_json, out):
    if as_json:
        out.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(render_text(report)) + "\n")


# commands -----------------------------------------------------------------------


def _load(path, args):
    fa = AlgebraFile.load(path)
    order = parse_order(args.order) if getattr(args, "order", None) else None
    return fa, fa.build(order=order)


def cmd_analyze(args):
    fa, A = _load(args.file, args)
    report = {"command": "analyze", "input": args.file}
    report.update(structure_section(A, fa))
    return report, EXIT_OK


def _sample_points(n, count=10, seed=0):
    rng = random.Random(seed)
    return [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)] for _ in range(count)]


def nil_section(N):
    poly = N.poly
    out = {
        "coordinates": list(poly.vars),
        "polynomial": str(poly),
        "terms": poly_terms(poly),
        "degree": poly.degree() if not poly.is_zero() else None,
    }
    return out


def cmd_nilpoly(args):
    fa, A = _load(args.file, args)
    if args.basis_file:
        basis = read_basis_file(args.basis_file, fa.vars)
        order = parse_order(args.order) if args.order else None
        A = fa.build(order=order, basis=basis)
    rep = structure_report(A)
    pi = default_projection(A)
    N = nil_polynomial(A, pi)
    report = {"command": "nilpoly", "input": args.file}
    report.update(structure_section(A, fa))
    report["projection"] = {
        "socle_element": element(A, pi.socle),
        "functional": vector(pi.omega),
        "kernel_basis": [element(A, list(k)) for k in pi.kernel_basis],
    }
    report["nil_polynomial"] = nil_section(N)
    report["degree_equals_nil_index"] = (N.poly.degree() == rep.nil_index) if pi.n else None
    report["blaschke"] = blaschke_section(N)
    if args.translate:
        y = A.coords(parse_polynomial(args.translate, fa.vars))
        if y[0] != 0:
            raise InputError("the translation point must lie in the maximal ideal")
        pi2 = translate_projection(pi, y)
        N2 = nil_polynomial(A, pi2)
        report["translation"] = {
            "point": element(A, y),
            "point_on_hypersurface": element(A, translation_point(pi, y)),
            "functional": vector(pi2.omega),
            "nil_polynomial": nil_section(N2),
            "blaschke": blaschke_section(N2),
            "graph_identity": check_graph_translation(A, pi, y, _sample_points(pi.n)),
        }
    return report, EXIT_OK


def blaschke_section(N):
    try:
        data = blaschke_data(N)
    except DegenerateQuadraticForm as exc:
        return {"normal_form": None, "reason": str(exc)}
    return {"normal_form": data.is_normal_form, "trace": vector(data.trace)}


def verdict_section(v):
    return {
        "holds": v.holds,
        "annihilates": v.annihilates,
        "failing_generators": [str(f) for f in v.failing_generators],
        "span_dimension": v.span_dimension,
        "algebra_dimension": v.algebra_dimension,
    }


def cmd_invsys(args):
    fa, A = _load(args.file, args)
    rep = structure_report(A)
    report = {"command": "invsys", "input": args.file}
    report.update(structure_section(A, fa))
    if args.verify:
        if not rep.is_gorenstein:
            raise NotGorenstein(f"socle has dimension {rep.socle_dimension}")
        g = read_polynomial_file(args.verify, fa.vars)
        report["mode"] = "verify"
        report["polynomial"] = str(g)
        report["verdict"] = verdict_section(verify_inverse_system(A, g))
        return report, EXIT_OK
    pi = default_projection(A)
    N = nil_polynomial(A, pi)
    if args.complement:
        L = [A.coords(parse_polynomial(e, fa.vars)) for e in split_list(args.complement)]
    else:
        L = default_complement(A, pi)
    Q = restrict_nil_polynomial(N, L)
    relations = relation_ideal(A, L, Q.vars)
    report["mode"] = "extract"
    report["complement"] = [element(A, e) for e in L]
    report["Q"] = str(Q)
    report["minus_Q"] = str(-Q)
    report["Q_terms"] = poly_terms(Q)
    report["verdict"] = verdict_section(verify_relations(relations, A.dimension, Q))
    if len(L) == len(A.vars) and all(A.variable(i) == list(L[i]) for i in range(len(L))):
        report["verdict_against_presentation"] = verdict_section(verify_inverse_system(A, Q))
    return report, EXIT_OK


def _candidate_section(cand):
    return {"C": [vector(r) for r in cand.C], "c": q(cand.c)}


def _refutation_section(refutation):
    return [{"assumptions": list(a), "reason": r, "equations": list(e)} for a, r, e in refutation.leaves]


def _parse_degrees(text, nu):
    if text is None:
        return None
    if text.strip() == "all":
        return tuple(range(nu, 1, -1))
    try:
        return tuple(int(x) for x in split_list(text))
    except ValueError:
        raise InputError(f"bad degree list {text!r}") from None


def cmd_isocheck(args):
    fa, A = _load(args.file_a, args)
    fb, B = _load(args.file_b, args)
    report = {"command": "isocheck", "inputs": [args.file_a, args.file_b]}
    report["algebras"] = [structure_section(A, fa), structure_section(B, fb)]
    for X in (A, B):
        rep = structure_report(X)
        if not rep.is_gorenstein:
            raise NotGorenstein(f"socle has dimension {rep.socle_dimension}")
    pa, pb = default_projection(A), default_projection(B)
    fpa, fpb = invariant_fingerprint(A, pa), invariant_fingerprint(B, pb)
    report["fingerprints"] = [fingerprint_section(fpa), fingerprint_section(fpb)]

    if args.candidate:
        cand = read_candidate(args.candidate)
        ok = verify_linear_equivalence(A, pa, B, pb, cand)
        report["mode"] = "candidate"
        report["candidate"] = _candidate_section(cand)
        report["candidate_verified"] = ok
        if ok:
            report["multiplicative"] = is_multiplicative(A, B, induced_linear_map(A, pa, B, pb, cand))
        return _finish(report, "ISOMORPHIC" if ok else "UNKNOWN")

    if args.subst:
        subst = read_substitution(args.subst, A.vars, B.vars)
        ok = verify_algebra_morphism(A, B, subst)
        report["mode"] = "substitution"
        report["substitution"] = {v: str(subst[v]) for v in A.vars}
        report["morphism_verified"] = ok
        if ok:
            cand = candidate_from_morphism(A, pa, B, pb, subst)
            if cand is not None:
                report["candidate"] = _candidate_section(cand)
                report["candidate_verified"] = verify_linear_equivalence(A, pa, B, pb, cand)
        return _finish(report, "ISOMORPHIC" if ok else "UNKNOWN")

    report["mode"] = "decide"
    diffs = fpa.differences(fpb)
    if diffs:
        report["certificate"] = {"kind": "fingerprint",
                                 "differences": [{"field": f, "values": [_plain(a), _plain(b)]}
                                                 for f, a, b in diffs]}
        return _finish(report, "NOT_ISOMORPHIC")
    if pa.n == 0:
        report["witness"] = {"C": [], "c": "1"}
        return _finish(report, "ISOMORPHIC")
    degrees = _parse_degrees(args.degrees, fpa.nil_index)
    sys_ = equivalence_constraint_system(A, pa, B, pb, degrees, fa.weights, fb.weights)
    report["degrees"] = list(sys_.degrees)
    report["unknowns"] = len(sys_.unknowns)
    report["equations"] = len(sys_._sparse)
    report["notes"] = list(sys_.notes)
    report["graded"] = [g is not None for g in sys_.graded]
    decision = decide_constraint_satisfiability(sys_)
    if isinstance(decision, Infeasible):
        report["certificate"] = {"kind": "groebner", "degrees": list(decision.degrees),
                                 "leaves": _refutation_section(decision.refutation)}
        return _finish(report, "NOT_ISOMORPHIC")
    if isinstance(decision, Witness):
        report["witness"] = _candidate_section(decision.candidate)
        report["witness_degrees"] = list(decision.degrees)
        report["witness_verified"] = verify_linear_equivalence(A, pa, B, pb, decision.candidate)
        return _finish(report, "ISOMORPHIC")
    assert isinstance(decision, Unknown)
    report["reason"] = decision.reason
    return _finish(report, "UNKNOWN")


def _plain(v):
    return list(v) if isinstance(v, tuple) else v


def _finish(report, verdict):
    report["verdict"] = verdict
    code = {"ISOMORPHIC": EXIT_OK, "NOT_ISOMORPHIC": EXIT_NOT_ISOMORPHIC, "UNKNOWN": EXIT_UNKNOWN}[verdict]
    return report, code


# entry point --------------------------------------------------------------------


def exit_code_for(exc):
    if isinstance(exc, NotAComplement):
        return EXIT_BAD_COMPLEMENT
    if isinstance(exc, NotGorenstein):
        return EXIT_NOT_GORENSTEIN
    if isinstance(exc, (NotLocal, ImproperIdeal)):
        return EXIT_NOT_LOCAL
    if isinstance(exc, InfiniteDimensional):
        return EXIT_INFINITE
    if isinstance(exc, (ParseError, InputError, SingularBasis, VariableMismatch,
                        DimensionMismatch, SingularC)):
        return EXIT_PARSE
    return None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", default=argparse.SUPPRESS,
                        help="term order: grevlex, lex or weighted:W1,W2,...")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print the report as JSON")

    parser = argparse.ArgumentParser(prog="gorenstein", description="Artinian Gorenstein algebra toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--order", default=None, help="term order: grevlex, lex or weighted:W1,W2,...")
    parser.add_argument("--json", action="store_true", default=False, help="print the report as JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="structure of an algebra")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("nilpoly", parents=[common], help="nil-polynomial and Blaschke data")
    p.add_argument("file")
    p.add_argument("--basis-file", help="custom basis, polynomials separated by commas or newlines")
    p.add_argument("--translate", metavar="EXPR", help="translate the projection by this element")
    p.set_defaults(func=cmd_nilpoly)

    p = sub.add_parser("invsys", parents=[common], help="inverse system extraction or verification")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--complement", metavar="LIST", help="comma-separated elements spanning m/m^2")
    g.add_argument("--verify", metavar="G", help="file holding a candidate inverse system")
    p.set_defaults(func=cmd_invsys)

    p = sub.add_parser("isocheck", parents=[common], help="decide isomorphism of two algebras")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--degrees", metavar="LIST", help="comma-separated degrees, or 'all'")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--candidate", metavar="F", help='JSON file {"C": [[...]], "c": "p/q"}')
    g.add_argument("--subst", metavar="F", help="key/value file: source variable = target polynomial")
    p.set_defaults(func=cmd_isocheck)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        report, code = args.func(args)
    except GorensteinError as exc:
        code = exit_code_for(exc)
        if code is None:
            raise
        if args.json:
            emit({"command": args.command, "error": {"type": type(exc).__name__, "message": str(exc)}}, True, out)
        err.write(f"error: {exc}\n")
        return code
    emit(report, args.json, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
