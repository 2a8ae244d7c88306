import json
import subprocess
import sys

import pytest

from semilin import cli, suites
from semilin.report import row, skipped


def run(argv, capsys):
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def check_schema(doc):
    assert set(doc) >= {"suite", "rows", "summary"}
    assert isinstance(doc["suite"], str)
    assert set(doc["summary"]) == {"pass", "fail", "skipped"}
    assert all(isinstance(v, int) for v in doc["summary"].values())
    for r in doc["rows"]:
        assert isinstance(r["check"], str)
        assert isinstance(r["params"], dict)
        assert r["status"] in ("pass", "fail", "skipped")
        assert r["witness"] is None or isinstance(r["witness"], str)
    tallies = {s: sum(r["status"] == s for r in doc["rows"]) for s in ("pass", "fail", "skipped")}
    assert tallies == doc["summary"]
    keys = [(r["check"], json.dumps(r["params"], sort_keys=True)) for r in doc["rows"]]
    assert keys == sorted(keys)


def test_verify_writes_valid_json(tmp_path, capsys):
    path = tmp_path / "out.json"
    code, out, _ = run(["verify", "appendix", "--json", str(path)], capsys)
    assert code == 0
    assert "appendix: 7 pass, 0 fail, 0 skipped" in out
    check_schema(json.loads(path.read_text()))


def test_verify_identities(tmp_path, capsys):
    path = tmp_path / "id.json"
    code, out, _ = run(["verify", "identities", "--json", str(path)], capsys)
    doc = json.loads(path.read_text())
    check_schema(doc)
    assert code == 0 and doc["summary"]["fail"] == 0 and doc["summary"]["skipped"] >= 1


def test_failure_gives_exit_one(monkeypatch, tmp_path, capsys):
    monkeypatch.setitem(suites.RUNNERS, "appendix",
                        lambda opt: [row("demo", {"k": 1}, False, "boom"), skipped("demo", {"k": 2}, "why")])
    path = tmp_path / "f.json"
    code, out, _ = run(["verify", "appendix", "--json", str(path)], capsys)
    assert code == 1
    assert "FAIL" in out and "boom" in out
    doc = json.loads(path.read_text())
    check_schema(doc)
    assert doc["summary"] == {"pass": 0, "fail": 1, "skipped": 1}


@pytest.mark.parametrize("argv", [["verify", "unknown"], ["verify", "socle", "--seed", "x"], [],
                                  ["dims", "binom:2"], ["dims", "binom:2", "--t-range", "6..3"],
                                  ["fit", "nonsense:2"], ["fit", "psi", "--field", "GF(4)"],
                                  ["snf", "[[1, 2], [3]]"], ["snf", "not json"],
                                  ["k0", "mul", "{\"binpoly\": [1]}", "{\"aug\": 3}"]])
def test_usage_errors_exit_two(argv, capsys):
    code, _, _ = run(argv, capsys)
    assert code == 2


def test_dims_table(capsys):
    code, out, _ = run(["dims", "binom:2", "--t-range", "3..6"], capsys)
    assert code == 0
    values = [int(line.split()[1]) for line in out.splitlines()[1:5]]
    assert values == [3, 6, 10, 15]
    assert "fit: C(X,2)" in out


@pytest.mark.parametrize("desc,want", [("trivial", "1"), ("psi", "C(X,1)"), ("binom:2", "C(X,2)"),
                                       ("sum:binom:1,binom:2", "C(X,1) + C(X,2)"),
                                       ("prod:psi*binom:2", "2*C(X,2) + 3*C(X,3)")])
def test_fit(desc, want, capsys):
    code, out, _ = run(["fit", desc], capsys)
    assert code == 0
    assert out.splitlines()[0] == want


def test_k0_mul(capsys):
    x = json.dumps({"binpoly": [], "aug": [{"rep": [1], "mult": 1}, {"rep": [0], "mult": -1}], "gamma": [[3]]})
    c = json.dumps({"binpoly": [0, 1], "aug": [], "gamma": [[3]]})
    code, out, _ = run(["k0", "mul", x, c], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["binpoly"] == [] and doc["aug"] == []


def test_snf(capsys):
    code, out, _ = run(["snf", "[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]"], capsys)
    assert code == 0
    assert json.loads(out)["diagonal"] == [2, 6, 12]


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "semilin.cli", "fit", "psi"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("C(X,1)")
