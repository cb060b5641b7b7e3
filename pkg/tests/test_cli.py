import json
import subprocess
import sys
from pathlib import Path

import pytest

from etnc.cli import main

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_lvalue(capsys):
    code, out = run(capsys, "lvalue", "--modulus", "3", "--char-index", "1", "--k", "1")
    assert code == 0 and out["value"] == "1/3" and out["odd"] is True


def test_lvalue_smoothing(capsys):
    code, out = run(capsys, "lvalue", "--modulus", "3", "--char-index", "1", "--smooth", "5")
    assert out["value"] == "2"
    code, out = run(capsys, "lvalue", "--modulus", "4", "--char-index", "1", "--smooth", "5")
    assert out["value"] == "-2"


def test_stickelberger_m4(capsys):
    code, out = run(capsys, "stickelberger", "--m", "4", "--p", "3", "--sigma", "inf", "--sigma-prime", "")
    assert code == 0
    assert out["character_values"] == {"1": "1/2"}
    coeffs = {tuple(g): (c["num"], c["den"]) for g, c in out["theta"]}
    assert coeffs == {("0",): ("1", "4"), ("1",): ("-1", "4")}
    assert out["integrality"]["integral"] is True


def test_stickelberger_reports_failing_hypothesis(capsys):
    code, out = run(capsys, "stickelberger", "--m", "23", "--p", "3", "--sigma", "inf,23", "--sigma-prime", "23")
    assert code == 2 and out["condition"] == "H1"


def test_stickelberger_strict(capsys):
    code, out = run(capsys, "stickelberger", "--m", "4", "--p", "3", "--strict")
    assert code == 2 and out["condition"] == "H4"


def test_fitting_order(capsys):
    code, out = run(capsys, "fitting", "--matrix", str(DATA / "diag_p_p2.json"), "--what", "order")
    assert code == 0 and out["order"] == "27" and out["log_p"] == "3" and out["certified"] is True


def test_fitting_ideal(capsys):
    code, out = run(capsys, "fitting", "--matrix", str(DATA / "diag_p_p2.json"), "--what", "ideal")
    assert code == 0 and out["valuation"] == "3"


def test_fitting_bad_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out = run(capsys, "fitting", "--matrix", str(bad))
    assert code == 2 and "malformed" in out["error"]
    missing = tmp_path / "missing.json"
    missing.write_text(json.dumps({"rows": 1}))
    code, out = run(capsys, "fitting", "--matrix", str(missing))
    assert code == 2


def test_class_number_minus(capsys):
    code, out = run(capsys, "class-number-minus", "--p", "23")
    assert out["h_minus"] == "3"
    code, out = run(capsys, "class-number-minus", "--p", "21")
    assert code == 2


def test_unknown_suite(capsys):
    code, out = run(capsys, "verify", "--suite", "nope")
    assert code == 2 and "unknown suite" in out["error"]


def test_case_needs_check(capsys):
    code, out = run(capsys, "verify", "--suite", "dirichlet", "--case", "0")
    assert code == 2


def test_verify_is_byte_identical():
    cmd = [sys.executable, "-m", "etnc", "verify", "--suite", "ritter_weiss", "--seed", "7", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
    rep = json.loads(a)
    assert rep["seed"] == "7" and rep["passed"] is True


def test_verify_case_replay(capsys):
    code, out = run(capsys, "verify", "--suite", "dirichlet", "--check", "conductor_induction", "--case", "5")
    assert code == 0 and out["result"]["ok"] is True


def test_eisenstein_small_bound(capsys):
    code, out = run(capsys, "verify", "--suite", "eisenstein", "--bound", "1", "--iters", "3")
    assert code == 0 and out["passed"] is True


def test_hecke_fuzz(capsys):
    code, out = run(capsys, "hecke-fuzz", "--iters", "3", "--bound", "30")
    assert code == 0 and out["passed"] is True
    assert out["checks"][0]["name"] == "hecke_identities"


def test_missing_required_flag():
    with pytest.raises(SystemExit) as e:
        main(["lvalue", "--modulus", "3"])
    assert e.value.code == 2
