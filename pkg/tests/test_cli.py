import io
import json
from pathlib import Path
import subprocess
import sys

import pytest

from gorenstein.cli import main

HERE = Path(__file__).parent


@pytest.fixture(autouse=True)
def in_tests_dir(monkeypatch):
    monkeypatch.chdir(HERE)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run("--json", *argv)
    return code, json.loads(out)


# analyze -------------------------------------------------------------------------


def test_analyze_a1():
    code, rep = run_json("analyze", "fixtures/a_1.alg")
    assert code == 0
    assert (rep["dimension"], rep["gorenstein"], rep["nil_index"]) == (15, True, 7)
    assert rep["grading"]["weights"] == [3, 2]
    assert rep["grading"]["dims"]["6"] == 2 and rep["grading"]["dims"]["8"] == 2


def test_analyze_x2():
    code, rep = run_json("analyze", "fixtures/x2.alg")
    assert code == 0
    assert (rep["dimension"], rep["nil_index"]) == (2, 1)


@pytest.mark.parametrize("fixture, expected", [
    ("infinite.alg", 3),
    ("a_2.alg", 3),
    ("not_local.alg", 4),
])
def test_analyze_exit_codes(fixture, expected):
    code, _, err = run("analyze", f"fixtures/{fixture}")
    assert code == expected
    assert err.startswith("error:")


def test_parse_error(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("vars = x\ngens = x^^2\n")
    assert run("analyze", str(bad))[0] == 2
    bad.write_text("vars = x\ngens = x^2\ncolour = red\n")
    assert run("analyze", str(bad))[0] == 2
    assert run("analyze", str(tmp_path / "missing.alg"))[0] == 2
    assert run("frobnicate")[0] == 2


def test_json_error_object():
    code, out, _ = run("--json", "analyze", "fixtures/infinite.alg")
    assert code == 3
    assert json.loads(out)["error"]["type"] == "InfiniteDimensional"


def test_global_flags_after_subcommand():
    a = run("--json", "--order", "lex", "analyze", "fixtures/x2y2.alg")
    b = run("analyze", "fixtures/x2y2.alg", "--order", "lex", "--json")
    assert a == b and a[0] == 0
    assert json.loads(a[1])["order"] == "lex"


# nilpoly -------------------------------------------------------------------------


def test_nilpoly_monomial_basis():
    code, rep = run_json("nilpoly", "fixtures/a_1.alg", "--basis-file", "fixtures/at_basis.txt")
    assert code == 0
    terms = dict(map(tuple, rep["nil_polynomial"]["terms"]))
    assert terms["a2^7"] == "1/10080"
    assert terms["a1^4*a2"] == "1/48"
    assert rep["blaschke"]["normal_form"] is True
    assert rep["degree_equals_nil_index"] is True


def test_nilpoly_x3():
    code, rep = run_json("nilpoly", "fixtures/x3.alg")
    assert code == 0
    assert rep["nil_polynomial"]["terms"] == [["a1^2", "-1/2"]]


def test_nilpoly_translate():
    code, rep = run_json("nilpoly", "fixtures/x3.alg", "--translate", "x")
    assert code == 0
    assert rep["translation"]["graph_identity"] is True
    assert rep["translation"]["functional"] == ["0", "1", "1"]


def test_nilpoly_not_gorenstein():
    assert run("nilpoly", "fixtures/not_gorenstein.alg")[0] == 5


# invsys --------------------------------------------------------------------------


def test_invsys_extract_a1():
    code, rep = run_json("invsys", "fixtures/a_1.alg", "--complement", "x,y")
    assert code == 0
    assert rep["verdict"]["holds"] and rep["verdict"]["span_dimension"] == 15


def test_invsys_verify_mu1():
    code, rep = run_json("invsys", "fixtures/a_1.alg", "--verify", "fixtures/mu_1.poly")
    assert code == 0
    assert rep["verdict"]["holds"] is True


def test_invsys_verify_fails_with_generator():
    code, rep = run_json("invsys", "fixtures/x2.alg", "--verify", "fixtures/y2.poly")
    assert rep["verdict"]["holds"] is False
    assert rep["verdict"]["failing_generators"] == ["x^2"]


def test_invsys_bad_complement():
    assert run("invsys", "fixtures/x2y2.alg", "--complement", "x")[0] == 6
    assert run("invsys", "fixtures/x2y2.alg", "--complement", "x,x")[0] == 6
    assert run("invsys", "fixtures/not_gorenstein.alg")[0] == 5


# isocheck ------------------------------------------------------------------------


def test_isocheck_not_isomorphic():
    code, rep = run_json("isocheck", "fixtures/a_1.alg", "fixtures/a_3.alg")
    assert code == 1
    assert rep["verdict"] == "NOT_ISOMORPHIC"
    assert rep["certificate"]["kind"] == "groebner"
    assert rep["certificate"]["degrees"] == [7, 6, 5]


def test_isocheck_isomorphic():
    code, rep = run_json("isocheck", "fixtures/a_1.alg", "fixtures/a_m1.alg")
    assert code == 0
    assert rep["witness_verified"] is True
    # the row of C belonging to y carries mu = -1
    basis = rep["algebras"][0]["basis"]
    row = basis.index("y") - 1
    assert rep["witness"]["C"][row][row] == "-1"


def test_isocheck_fingerprint():
    code, rep = run_json("isocheck", "fixtures/x3.alg", "fixtures/x2y2.alg")
    assert code == 1
    assert rep["certificate"]["kind"] == "fingerprint"


def test_isocheck_substitution():
    code, rep = run_json("isocheck", "fixtures/a_1.alg", "fixtures/a_m1.alg", "--subst", "fixtures/flip_y.subst")
    assert code == 0
    assert rep["morphism_verified"] and rep["candidate_verified"]
    code, rep = run_json("isocheck", "fixtures/a_1.alg", "fixtures/a_1.alg", "--subst", "fixtures/swap.subst")
    assert code == 7
    assert rep["morphism_verified"] is False


def test_isocheck_candidate(tmp_path):
    n = 13
    ident = [[str(int(i == j)) for j in range(n)] for i in range(n)]
    f = tmp_path / "id.json"
    f.write_text(json.dumps({"C": ident, "c": "1"}))
    code, rep = run_json("isocheck", "fixtures/a_1.alg", "fixtures/a_1.alg", "--candidate", str(f))
    assert code == 0 and rep["candidate_verified"] and rep["multiplicative"]
    f.write_text(json.dumps({"C": ident, "c": "2"}))
    assert run("isocheck", "fixtures/a_1.alg", "fixtures/a_1.alg", "--candidate", str(f))[0] == 7
    f.write_text(json.dumps({"C": ident, "c": "0"}))
    assert run("isocheck", "fixtures/a_1.alg", "fixtures/a_1.alg", "--candidate", str(f))[0] == 2


def test_isocheck_infinite_input():
    assert run("isocheck", "fixtures/a_1.alg", "fixtures/a_2.alg")[0] == 3


# determinism -------------------------------------------------------------------


@pytest.mark.parametrize("golden, argv", [
    ("nilpoly_x3.txt", ["nilpoly", "fixtures/x3.alg"]),
    ("nilpoly_a1.json", ["--json", "nilpoly", "fixtures/a_1.alg", "--basis-file", "fixtures/at_basis.txt"]),
    ("invsys_a1.json", ["--json", "invsys", "fixtures/a_1.alg", "--complement", "x,y"]),
])
def test_golden_reports(golden, argv):
    first = run(*argv)[1]
    assert first == run(*argv)[1]
    assert first == (HERE / "golden" / golden).read_text()


def test_isocheck_reruns_identical():
    argv = ["--json", "isocheck", "fixtures/a_1.alg", "fixtures/a_3.alg"]
    assert run(*argv) == run(*argv)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gorenstein", "analyze", "fixtures/x2.alg"],
                          capture_output=True, text=True, cwd=HERE)
    assert proc.returncode == 0
    assert "dimension: 2" in proc.stdout
