import io
import json
import subprocess
import sys

import pytest

from levirep.cli import main
from levirep.exactpoly import LaurentPoly
from levirep.rootdata import build_root_system, parse_parabolic
from levirep.schubert import SchubertCombination


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_expand_anchor():
    code, out, _ = run("expand", "--family", "A", "--rank", "2", "--parabolic", "borel", "--poly", "x1")
    assert code == 0 and out.strip() == "1·[s1]"


def test_expand_zero():
    code, out, _ = run("expand", "--family", "A", "--rank", "2", "--poly", "0")
    assert code == 0 and out.strip() == "0"


def test_expand_invariant_vanishes():
    code, out, _ = run("expand", "--family", "C", "--rank", "2", "--poly", "x1^2+x2^2")
    assert code == 0 and out.strip() == "0"


def test_xi_examples():
    code, out, _ = run("xi", "--family", "C", "--rank", "2", "--parabolic", "maximal:1",
                       "--char", "t1 - t1^-1")
    assert code == 0 and out.strip() == "2·[s1]"
    code, out, _ = run("xi", "--family", "C", "--rank", "2", "--parabolic", "maximal:1", "--char", "1")
    assert code == 0 and out.strip() == "1·[e]"


def test_xi_not_polynomial():
    code, out, _ = run("xi", "--family", "C", "--rank", "2", "--parabolic", "borel",
                       "--char", "t1 + t1^-1")
    assert code == 4 and "2·t1" in out


@pytest.mark.parametrize("argv", [
    ("expand", "--family", "A", "--rank", "2", "--poly", "x1+"),
    ("expand", "--family", "A", "--rank", "2", "--poly", "x5"),
    ("expand", "--family", "E", "--rank", "6", "--poly", "x1"),
    ("expand", "--family", "C", "--rank", "1", "--poly", "x1"),
    ("expand", "--poly", "x1"),
    ("expand", "--family", "A", "--rank", "2", "--poly", "x1", "--unknown"),
    ("character", "--family", "B", "--rank", "2", "--weight", "0,1"),
    ("character", "--family", "C", "--rank", "2", "--weight", "1"),
    ("verify", "prop8", "--n", "1", "--r", "1"),
])
def test_input_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2 and out == "" and err


def test_not_invariant_exit_3():
    code, _, err = run("expand", "--family", "A", "--rank", "2", "--parabolic", "maximal:1", "--poly", "x2")
    assert code == 3 and "invariant" in err
    code, _, _ = run("xi", "--family", "C", "--rank", "2", "--parabolic", "maximal:1", "--char", "t2")
    assert code == 3


def test_membership():
    code, out, _ = run("membership", "--family", "C", "--rank", "2", "--char", "t1^2 + t1^-2 + t2^2 + t2^-2")
    assert code == 0 and out.startswith("member: true")
    code, out, _ = run("membership", "--family", "B", "--rank", "2", "--char", "t1 + t1^-1 + t2 + t2^-1")
    assert code == 4 and "witness" in out


def test_character_and_tensor():
    code, out, _ = run("character", "--family", "C", "--rank", "2", "--weight", "1,0", "--format", "json")
    payload = json.loads(out)
    assert code == 0 and payload["result"]["dimension"] == 4
    chi = LaurentPoly.parse(payload["result"]["character"], 2)
    assert chi == LaurentPoly.parse("t1 + t1^-1 + t2 + t2^-1", 2)
    code, out, _ = run("tensor", "--family", "A", "--rank", "1", "--weight", "1", "--weight2", "1",
                       "--format", "json")
    rows = json.loads(out)["result"]
    assert [(r["fundamental"], r["multiplicity"]) for r in rows] == [([2], 1), ([0], 1)]


def test_springer():
    code, out, _ = run("springer", "--family", "A", "--rank", "1", "--weight", "1")
    assert code == 0
    assert out.splitlines() == ["h1: 1/2*t1 - 1/2*t1^-1", "h2: -1/2*t1 + 1/2*t1^-1"]


def test_json_schema():
    code, out, _ = run("verify", "thm3", "--r", "2", "--n", "4", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert set(payload) == {"command", "inputs", "result", "claims"}
    assert payload["command"] == "verify" and payload["inputs"]["n"] == 4
    keys = {"claim", "family", "rank", "parabolic", "status", "lhs", "rhs", "diff"}
    assert payload["claims"] and all(keys <= set(c) for c in payload["claims"])
    assert all(c["status"] == "pass" for c in payload["claims"])


@pytest.mark.parametrize("argv", [
    ("verify", "thm3", "--r", "2", "--n", "4"),
    ("verify", "sec10", "--family", "D", "--rank", "4"),
    ("verify", "prop9", "--n", "3", "--r", "2"),
    ("verify", "prop10", "--n", "4"),
    ("verify", "diagram"),
    ("verify", "lemma-so", "--n", "3"),
    ("verify", "negative-irreps", "--family", "C", "--rank", "2"),
    ("verify", "properties", "--seed", "1", "--cases", "20"),
])
def test_verify_suites_pass(argv):
    code, out, _ = run(*argv)
    assert code == 0, out
    assert ": pass (" in out.splitlines()[-1]


def test_verify_failure_exit_5(monkeypatch):
    from levirep import ximap

    def broken(r, n, products=True):
        report = ximap.VerificationReport("thm3")
        report.check("forced", build_root_system("A", 1), "borel", "1", "2")
        return report

    monkeypatch.setattr(ximap, "verify_theorem3", broken)
    code, out, _ = run("verify", "thm3", "--r", "1", "--n", "2")
    assert code == 5 and "FAIL" in out


def test_printed_combination_round_trips():
    code, out, _ = run("product", "--family", "A", "--rank", "3", "--parabolic", "maximal:2",
                       "--a", "1·[s2]", "--b", "1·[s2]")
    assert code == 0 and out.strip() == "1·[s1 s2] + 1·[s3 s2]"
    tag = parse_parabolic(build_root_system("A", 3), "maximal:2")
    value = SchubertCombination.parse(tag, out.strip())
    code2, out2, _ = run("product", "--family", "A", "--rank", "3", "--parabolic", "maximal:2",
                         "--a", out.strip(), "--b", "1")
    assert code2 == 0 and SchubertCombination.parse(tag, out2.strip()) == value


def test_product_methods_agree():
    args = ("product", "--family", "C", "--rank", "3", "--parabolic", "maximal:2",
            "--a", "[s2]", "--b", "2·[s3 s2] - [s2]")
    first = run(*args)
    assert first[0] == 0 and first[1].strip() != "0"
    assert first == run(*args, "--method", "chevalley")


def test_deterministic_output():
    argv = ("verify", "properties", "--seed", "7", "--cases", "15", "--format", "json")
    assert run(*argv) == run(*argv)


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "levirep.cli", "expand", "--family", "B", "--rank", "3",
                           "--poly", "x1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1·[s1]"
