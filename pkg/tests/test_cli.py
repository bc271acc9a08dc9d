import json
import subprocess
import sys

import pytest

from nilgeom.algebra import algebra_to_json
from nilgeom.catalog import abelian, family_center1
from nilgeom.cli import dumps, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_validate_center1(tmp_path, capsys):
    path = write(tmp_path, "c1.json", algebra_to_json(family_center1(1, 1)))
    code, out, _ = run(capsys, "validate", path)
    assert code == 0
    assert "step: 2, center: {e5}" in out
    assert "unimodular: true" in out


def test_validate_abelian(tmp_path, capsys):
    path = write(tmp_path, "ab.json", {"dim": 5, "brackets": []})
    code, out, _ = run(capsys, "validate", path)
    assert code == 0 and "step: 1" in out


def test_validate_broken_jacobi(tmp_path, capsys):
    path = write(tmp_path, "bad.json", {"dim": 3, "brackets": [
        {"i": 1, "j": 2, "coeffs": {"3": "1"}},
        {"i": 1, "j": 3, "coeffs": {"1": "1"}},
    ]})
    code, _, err = run(capsys, "validate", path)
    assert code == 1
    assert "(1,2,3,3)" in err


@pytest.mark.parametrize("payload", [
    {"dim": 3, "brackets": [{"i": 2, "j": 1, "coeffs": {"3": "1"}}]},
    {"dim": 3, "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1.5"}}]},
    {"brackets": []},
    {"dim": 0},
])
def test_validate_bad_input(tmp_path, capsys, payload):
    code, _, err = run(capsys, "validate", write(tmp_path, "x.json", payload))
    assert code == 1 and err.startswith("error:")


def test_validate_missing_file(capsys):
    assert run(capsys, "validate", "/nonexistent/alg.json")[0] == 1


def test_validate_json(tmp_path, capsys):
    path = write(tmp_path, "c1.json", algebra_to_json(family_center1(2, 1)))
    code, out, _ = run(capsys, "validate", path, "--json")
    payload = json.loads(out)
    assert code == 0 and payload["step"] == 2 and payload["unimodular"] is True
    assert payload["center"]["basis"] == [["0", "0", "0", "0", "1"]]


def test_christoffel_center3(capsys):
    code, out, _ = run(capsys, "christoffel", "--family", "center3", "--lambda", "1")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 6
    assert all(line.endswith("= 1/2") or line.endswith("= -1/2") for line in lines)


def test_christoffel_abelian(capsys):
    code, out, _ = run(capsys, "christoffel", "--family", "abelian", "--dim", "4")
    assert code == 0 and out.strip() == "no nonzero entries"


def test_christoffel_parameter_order(capsys):
    assert run(capsys, "christoffel", "--family", "center1", "--lambda", "1", "--mu", "2")[0] == 1


def test_bad_rational_flag_exits_1(capsys):
    assert run(capsys, "christoffel", "--family", "center3", "--lambda", "0.5")[0] == 1


def test_christoffel_json(capsys):
    code, out, _ = run(capsys, "christoffel", "--family", "center2", "--lambda", "2",
                       "--mu", "1", "--json")
    payload = json.loads(out)
    assert code == 0 and len(payload["entries"]) == 12
    assert {"k": 2, "i": 4, "j": 1, "value": "-1"} in payload["entries"]


def test_classify_text_and_json_agree(capsys):
    args = ["classify", "--family", "center1", "--lambda", "2", "--mu", "1"]
    code, text, _ = run(capsys, *args)
    assert code == 0
    code, out, _ = run(capsys, *args, "--json")
    payload = json.loads(out)
    for cls, entry in payload["classes"].items():
        line = next(l for l in text.splitlines() if l.strip().startswith(cls))
        if "dimension" in entry:
            assert f"dim {entry['dimension']}" in line
        else:
            assert "infeasible" in line
    verdicts = [l.split()[-1] for l in text.splitlines() if l.strip().startswith("Theorem")]
    assert verdicts == [row["verdict"] for row in payload["expectations"]]


def test_classify_abelian(capsys):
    code, out, _ = run(capsys, "classify", "--family", "abelian", "--dim", "5", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["expectations"] == []
    assert payload["classes"]["Killing"]["dimension"] == 5
    assert payload["classes"]["Harmonic"]["dimension"] == 5


def test_classify_non_unimodular_custom(tmp_path, capsys):
    path = write(tmp_path, "s.json", {"dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": {"2": "1"}}]})
    code, out, _ = run(capsys, "classify", "--algebra", path)
    assert code == 0 and "not computed: NotUnimodular" in out


def test_classify_needs_selection(capsys):
    assert run(capsys, "classify")[0] == 1


def test_verify_default_exits_2(capsys):
    code, out, _ = run(capsys, "verify-paper", "--json")
    payload = json.loads(out)
    assert code == 2
    differing = {(r["source"], r["family"]) for r in payload["rows"] if r["verdict"] == "differs"}
    assert {s for s, _ in differing} == {"Theorem 4"}
    assert payload["summary"]["rows"] == 7 * (15 + 15 + 5)


def test_verify_empty_grid(tmp_path, capsys):
    code, out, _ = run(capsys, "verify-paper", "--grid", write(tmp_path, "g.json", []), "--json")
    payload = json.loads(out)
    assert code == 0 and payload["rows"] == [] and payload["summary"]["differs"] == 0


def test_verify_custom_grid(tmp_path, capsys):
    grid = write(tmp_path, "g.json", [{"lambda": "5/2", "mu": "1/3"}])
    code, out, _ = run(capsys, "verify-paper", "--grid", grid, "--json")
    payload = json.loads(out)
    assert code == 2
    assert {r["family"] for r in payload["rows"]} == {"center1", "center2", "center3"}
    assert len(payload["rows"]) == 21


def test_verify_bad_grid(tmp_path, capsys):
    grid = write(tmp_path, "g.json", [{"lambda": "1", "mu": "2"}])
    assert run(capsys, "verify-paper", "--grid", grid)[0] == 1


def test_families(capsys):
    code, out, _ = run(capsys, "families")
    assert code == 0
    assert [l.split()[0] for l in out.strip().splitlines()] == [
        "center1", "center2", "center3", "heisenberg3", "abelian"]


def test_json_round_trip_is_byte_identical(capsys):
    for argv in (["classify", "--family", "center2", "--lambda", "3/2", "--mu", "1/2", "--json"],
                 ["christoffel", "--family", "center1", "--lambda", "2", "--mu", "1", "--json"]):
        _, out, _ = run(capsys, *argv)
        assert dumps(json.loads(out)) == out


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "nilgeom", "classify", "--family", "center3", "--lambda", "2"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.returncode == 0 and first.stdout == second.stdout


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
    assert abelian(2).dim == 2
