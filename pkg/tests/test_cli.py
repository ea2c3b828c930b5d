import contextlib
import io
import json
import pathlib
import subprocess
import sys

import pytest

from quadfact.cli import EXIT_BUDGET, EXIT_CONSTRAINT, EXIT_OK, EXIT_PARSE, main

GOLDEN = pathlib.Path(__file__).parent / "golden"
CASES = json.loads((GOLDEN / "cases.json").read_text())


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = main(list(argv))
        except SystemExit as exc:       # argparse usage errors
            code = exc.code
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("case", CASES, ids=[c["name"] for c in CASES])
def test_golden(case):
    argv = case["argv"]
    code, out, _ = run(argv[:1] + ["--json"] + argv[1:])
    assert code == EXIT_OK
    assert out == (GOLDEN / f"{case['name']}.json").read_text()


def test_entry_point_subprocess():
    res = subprocess.run([sys.executable, "-m", "quadfact", "classify", "--json", "--field", "GF(3)", "x^2", "x^2"],
                         capture_output=True, text=True, timeout=60)
    assert res.returncode == 0
    assert json.loads(res.stdout)["case"] == json.loads((GOLDEN / "classify_f3_x2.json").read_text())["case"]


@pytest.mark.parametrize("argv,code", [
    (["classify", "--field", "GF(3)", "x^^2", "x"], EXIT_PARSE),
    (["classify", "--field", "GF(2)", "1/2*x", "x"], EXIT_PARSE),
    (["classify", "--field", "GF(6)", "x", "x"], EXIT_PARSE),
    (["frobnicate"], EXIT_PARSE),
    (["construct", "T2b-v", "p=3", "a=1"], EXIT_CONSTRAINT),
    (["construct", "T2d", "--field", "GF(5)", "a=0", "gamma1=1", "delta1=0", "gamma2=1", "delta2=1"],
     EXIT_CONSTRAINT),
    (["factor", "--field", "GF(5^2)", "x^3", "x^3"], EXIT_BUDGET),
    (["verify-theorems", "--field", "GF(2)", "--max-deg", "3"], EXIT_OK),
])
def test_exit_codes(argv, code):
    got, _, err = run(argv)
    assert got == code, err


def test_text_and_json_agree():
    argv = ["classify", "--field", "GF(5)", "x^3", "x^3"]
    _, text, _ = run(argv)
    _, js, _ = run(argv[:1] + ["--json"] + argv[1:])
    cert = json.loads(js)
    assert cert["case"] in text
    for q in cert["factors"]:
        assert q in text


def test_dickson_and_decompose():
    code, out, _ = run(["dickson", "3", "1", "--json"])
    assert code == 0 and json.loads(out)["dickson"] == "x^3 - 3*x"
    code, out, _ = run(["decompose", "--field", "Q", "x^6+1", "--json"])
    assert code == 0 and "x^3" in out


def test_negative_leading_needs_separator():
    code, out, _ = run(["factor", "--json", "--field", "Q", "--", "x^4", "-4*x^4"])
    assert code == 0 and json.loads(out)["factors"]
