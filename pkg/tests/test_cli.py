import io
import json

import pytest

from rfhquad.cli import main

SPEC31 = {
    "n": 3,
    "k": 1,
    "a0": {"frequencies": [1.0]},
    "a1": {"blocks": [
        {"kind": "a", "m": 1, "re": 1.0},
        {"kind": "a", "m": 1, "re": 0.7},
    ]},
}


@pytest.fixture
def spec31(tmp_path):
    path = tmp_path / "spec31.json"
    path.write_text(json.dumps(SPEC31))
    return str(path)


def write_spec(tmp_path, doc, name="doc.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_rfh_table(spec31, capsys):
    assert main(["rfh", spec31]) == 0
    out = capsys.readouterr().out
    assert "Z2 at -2" in out
    assert "Z2 at -1" in out


def test_rfh_json(spec31, capsys):
    assert main(["rfh", spec31, "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["full"] == {"-2": 1, "-1": 1}
    assert doc["geq0"] == {"-2": 1}
    assert doc["plus"] == {"2": 1} and doc["minus"] == {"-1": 1}
    assert doc["input_echo"]["n"] == 3


def test_check_reports_verdict(spec31, capsys):
    assert main(["check", spec31]) == 0
    out = capsys.readouterr().out
    assert "sufficient" in out


def test_check_undecided_still_exits_zero(tmp_path, capsys):
    doc = {"n": 3, "k": 1, "a0": {"frequencies": [1.0]},
           "a1": {"blocks": [{"kind": "a", "m": 2, "re": 0.5}]}}
    assert main(["check", write_spec(tmp_path, doc)]) == 0
    out = capsys.readouterr().out
    assert "not met" in out


def test_classify_lists_blocks(spec31, capsys):
    assert main(["classify", spec31, "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    kinds = sorted(b["kind"] for b in doc["blocks"])
    assert kinds == ["a", "a", "c"]
    sig = [0, 0]
    for b in doc["blocks"]:
        sig[0] += b["signature"][0]
        sig[1] += b["signature"][1]
        assert b["dim"] in (2, 4)
    assert sig == [4, 2]  # definite 2x2 plus two split pairs


def test_orbits_window(spec31, capsys):
    assert main(["orbits", spec31, "--lo", "-7", "--hi", "7"]) == 0
    out = capsys.readouterr().out
    assert "-6.28" in out and "6.28" in out


def test_census_json_round_trips(spec31, capsys, tmp_path):
    assert main(["census", spec31, "--lo", "0.1", "--hi", "7", "--json"]) == 0
    first = json.loads(capsys.readouterr().out)
    echoed = write_spec(tmp_path, first["input_echo"], "echo.json")
    assert main(["census", echoed, "--lo", "0.1", "--hi", "7", "--json"]) == 0
    second = json.loads(capsys.readouterr().out)
    assert first["generators"] == second["generators"]
    for g in first["generators"]:
        assert isinstance(g["grading"], int)


def test_stdin_input(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(SPEC31)))
    assert main(["rfh", "-"]) == 0
    assert "Z2" in capsys.readouterr().out


def test_malformed_json_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["rfh", str(path)]) == 1


def test_missing_field_is_input_error(tmp_path):
    assert main(["rfh", write_spec(tmp_path, {"n": 2})]) == 1


def test_wrong_a1_dimension_is_input_error(tmp_path):
    doc = {"n": 3, "k": 1, "a0": {"frequencies": [1.0]},
           "a1": {"blocks": [{"kind": "a", "m": 1, "re": 1.0}]}}
    assert main(["rfh", write_spec(tmp_path, doc)]) == 1


def test_unknown_tolerance_is_input_error(tmp_path):
    doc = dict(SPEC31, tolerances={"wat": 1e-9})
    assert main(["rfh", write_spec(tmp_path, doc)]) == 1


def test_half_window_is_input_error(spec31):
    assert main(["orbits", spec31, "--lo", "-1"]) == 1


def test_unknown_subcommand_is_input_error(capsys):
    assert main(["frobnicate"]) == 1


def test_invalid_hamiltonian_is_input_error(tmp_path):
    doc = {"n": 2, "k": 1, "a0": {"frequencies": [1.0]},
           "a1": {"matrix": [[1.0, 0.0], [0.0, 1.0]]}}
    assert main(["rfh", write_spec(tmp_path, doc)]) == 1


COLLIDING = {
    "n": 3, "k": 1,
    "a0": {"frequencies": [1.0]},
    "a1": {"blocks": [{"kind": "a", "m": 1, "re": 1.0},
                      {"kind": "a", "m": 1, "re": 1.3}]},
}


def test_cluster_collision_is_numerical_failure(tmp_path):
    doc = dict(COLLIDING, tolerances={"eig_cluster": 0.5})
    assert main(["classify", write_spec(tmp_path, doc)]) == 2


def test_env_tolerances_apply(tmp_path, monkeypatch):
    doc = dict(COLLIDING)
    path = write_spec(tmp_path, doc)
    assert main(["classify", path]) == 0
    monkeypatch.setenv("RFHQUAD_TOLERANCES", json.dumps({"eig_cluster": 0.5}))
    assert main(["classify", path]) == 2
    # document override outranks the environment
    doc["tolerances"] = {"eig_cluster": 1e-9}
    assert main(["classify", write_spec(tmp_path, doc, "fixed.json")]) == 0


def test_selftest_subset(capsys):
    assert main(["selftest", "--criteria", "3,8"]) == 0
    out = capsys.readouterr().out
    assert "criterion  3 PASS" in out
    assert "criterion  8 PASS" in out


def test_selftest_json(capsys):
    assert main(["selftest", "--criteria", "3", "--json"]) == 0
    results = json.loads(capsys.readouterr().out)
    assert len(results) == 1 and results[0]["passed"] is True
