import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from necklaces import cli
from necklaces.report import check

SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def test_enumerate_match_published_p5(capsys):
    code, out = run(capsys, "enumerate", "--p", "5", "--gamma", "1,2", "--match-paper")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "p=5 gamma=1,2 necklaces=10"
    assert "(0, 1, 2, 4, ∞, 3)" in lines
    assert lines[-1] == "published sequences matched: 10/10 PASS"


def test_enumerate_match_published_p7_default_gamma(capsys):
    code, out = run(capsys, "enumerate", "--p", "7", "--match-paper")
    assert code == 0
    assert out.splitlines()[0] == "p=7 gamma=1,3 necklaces=21"
    assert out.splitlines()[-1] == "published sequences matched: 21/21 PASS"


def test_enumerate_match_published_wrong_gamma_fails(capsys):
    code, out = run(capsys, "enumerate", "--p", "7", "--gamma", "2,3", "--match-paper")
    assert code == 1
    assert out.splitlines()[-1].endswith("FAIL")


def test_enumerate_oriented_csv(capsys):
    code, out = run(capsys, "enumerate", "--p", "5", "--oriented", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["p", "gamma", "index", "necklace"]
    assert len(rows) == 21
    assert "\r\n" in out


def test_enumerate_json_schema(capsys):
    code, out = run(capsys, "enumerate", "--pmin", "5", "--pmax", "7", "--format", "json", "--match-paper")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("enumerate"))
    jsonschema.validate(doc, schema("envelope"))
    assert [r["count"] for r in doc["results"]] == [10, 21]


@pytest.mark.parametrize("argv", [
    ["enumerate", "--p", "4"],
    ["enumerate", "--p", "3"],
    ["enumerate"],
    ["enumerate", "--p", "7", "--pmin", "5"],
    ["enumerate", "--pmin", "24", "--pmax", "28"],
    ["enumerate", "--p", "7", "--gamma", "1,1"],
    ["enumerate", "--p", "7", "--gamma", "x"],
    ["verify", "--p", "5", "--epsilon", "4"],
    ["verify", "--p", "5", "--suite", "bogus"],
    ["pairing", "--p", "5", "--jobs", "0"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == 2
    assert "error" in capsys.readouterr().err


def test_pairing_verify_table_p11(capsys):
    code, out = run(capsys, "pairing", "--p", "11", "--verify-table")
    assert code == 0
    assert "table: (X - 30)*(X - 2)^10*(X - 8)^20*(X^2 - 10*X + 5)^12 PASS" in out


def test_pairing_p23_no_table(capsys):
    code, out = run(capsys, "pairing", "--p", "23")
    assert code == 0
    assert "table: no reference entry for this p" in out
    # second coefficient is minus the trace: 253 necklaces with diagonal (23 + 1) / 2
    assert out.splitlines()[1].startswith(f"charpoly: X^253 - {253 * 12}*X^252 ")


def test_pairing_show_matrix_and_json(capsys):
    code, out = run(capsys, "pairing", "--p", "5", "--show-matrix", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("pairing"))
    rec = doc["results"][0]
    assert rec["det"] == 6144 and rec["rank"] == 10
    assert rec["matrix"][0][0] == 3
    assert rec["table"]["factored"] == "(X - 6)*(X - 1)^4*(X - 4)^5"


def test_pairing_csv(capsys):
    code, out = run(capsys, "pairing", "--pmin", "5", "--pmax", "7", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["table_status"] for r in rows] == ["pass", "pass"]


def test_verify_all_p5(capsys):
    code, out = run(capsys, "verify", "--p", "5", "--all")
    assert code == 0
    assert "FAIL" not in out
    assert out.splitlines()[-1].endswith(", 0 failed")


def test_verify_chen86_p13(capsys):
    code, out = run(capsys, "verify", "--p", "13", "--suite", "chen86")
    assert code == 0
    assert "PASS chen86 p=13" in out


def test_verify_json_schema(capsys):
    code, out = run(capsys, "verify", "--p", "7", "--suite", "theta", "--suite", "merelade", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("verify"))
    assert doc["status"] == "pass"
    names = [r["identity_name"] for r in doc["results"]]
    # suites run in canonical order regardless of flag order
    assert names.index("theta_psi") < names.index("merelade_bijective")


def test_verify_skips_degeneracy_for_large_p(capsys):
    code, out = run(capsys, "verify", "--p", "17", "--suite", "degeneracy", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [r["status"] for r in rows] == ["skip"]


def test_verify_failure_sets_exit_code(capsys, monkeypatch):
    def broken(name, gamma, epsilon=None):
        return [check("forced", gamma.p, gamma, False, {"row": 0, "col": 0, "got": 1, "expected": 0})]

    monkeypatch.setattr(cli, "run_suite", broken)
    code, out = run(capsys, "verify", "--p", "5", "--suite", "genus")
    assert code == 1
    assert out.startswith("FAIL forced p=5")


def test_invariants_csv(capsys):
    code, out = run(capsys, "invariants", "--pmin", "5", "--pmax", "19", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    # primes 5, 7, 11, 13, 17, 19
    assert len(rows) == 6 * 4
    assert list(rows[0]) == ["p", "curve", "d", "e2", "e3", "e_inf", "genus", "relation"]
    assert {r["relation"] for r in rows} == {"OK"}
    by = {(r["p"], r["curve"]): r for r in rows}
    assert by[("11", "Xnsp")]["genus"] == "4"
    assert by[("11", "XnspPlus")]["genus"] == "1"


def test_invariants_json_schema(capsys):
    code, out = run(capsys, "invariants", "--p", "7", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("invariants"))
    assert len(doc["results"]) == 4


def test_invariants_text(capsys):
    code, out = run(capsys, "invariants", "--p", "13")
    assert out.splitlines()[0].split() == ["p", "curve", "d", "e2", "e3", "e_inf", "genus", "relation"]
    assert len(out.splitlines()) == 5


def test_out_file(tmp_path, capsys):
    target = tmp_path / "inv.csv"
    code, out = run(capsys, "invariants", "--p", "5", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("p,curve,d")


def test_deterministic_output_and_jobs(capsys):
    argv = ["verify", "--pmin", "5", "--pmax", "13", "--suite", "elliptic", "--format", "json"]
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv)
    _, c = run(capsys, *argv, "--jobs", "3")
    assert a == b == c


def test_enumerate_deterministic_with_jobs(capsys):
    _, a = run(capsys, "enumerate", "--pmin", "5", "--pmax", "13")
    _, b = run(capsys, "enumerate", "--pmin", "5", "--pmax", "13", "--jobs", "2")
    assert a == b


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "necklaces", "invariants", "--p", "11", "--format", "csv"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert "11,XnspPlus,55,7,1,5,1,OK" in res.stdout
