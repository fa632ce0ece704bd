import json
import subprocess
import sys

import pytest

from convcodes import codes, io
from convcodes.cli import run
from convcodes.galois import field_new


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    for env in ("CONVCODES_MAX_CODEWORDS", "CONVCODES_MAX_STATES", "CONVCODES_MAX_COSETS", "CONVCODES_MAX_TRUNCATED"):
        monkeypatch.delenv(env, raising=False)
    io.write_json("hamming74.json", io.code_to_json(codes.hamming(3)))
    io.write_json("zero.json", {"field": {"p": 2}, "generator": [[0, 0, 0]]})
    return tmp_path


def call(capsys, *argv):
    status = run(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_mindist(workdir, capsys):
    status, out, _ = call(capsys, "code", "mindist", "--in", "hamming74.json")
    assert status == 0 and json.loads(out) == {"d": 3}


def test_zero_code_is_rejected(workdir, capsys):
    status, out, err = call(capsys, "code", "mindist", "--in", "zero.json")
    assert status == 2 and out == ""
    assert json.loads(err)["error"] == "CodingError"


def test_conv_build_params(workdir, capsys):
    status, out, _ = call(capsys, "conv", "build", "--gamma0", "1", "--in", "hamming74.json")
    assert status == 0
    assert json.loads(out)["params"] == {"n": 7, "k": 3, "gamma": 1, "memory": 1, "df_lb": 3, "s": 6, "r": 7}


def test_out_files_round_trip(workdir, capsys):
    assert call(capsys, "conv", "build", "--gamma0", "1", "--in", "hamming74.json", "--out", "v.json")[0] == 0
    built = json.loads((workdir / "v.json").read_text())["params"]
    status, out, _ = call(capsys, "conv", "check", "--in", "v.json")
    checked = json.loads(out)
    assert status == 0 and {k: checked[k] for k in built} == built
    assert checked["basic"] and checked["reduced"] and checked["basic_smith"]
    status, out, _ = call(capsys, "conv", "freedist", "--in", "v.json")
    fd = json.loads(out)
    assert (fd["df"], fd["witness_length"]) == (3, 1)
    status, out, _ = call(capsys, "conv", "freedist", "--in", "v.json", "--truncated", "2")
    assert json.loads(out) == {"L": 2, "df_truncated": 3, "kind": "upper_bound"}
    status, out, _ = call(capsys, "conv", "bound", "--in", "v.json")
    assert json.loads(out) == {"gamma": 1, "k": 3, "n": 7, "r": 7, "s": 6}


def test_code_subcommands(workdir, capsys):
    status, out, _ = call(capsys, "code", "info", "--in", "hamming74.json", "--format", "csv")
    header, row = out.splitlines()
    assert header.startswith("name,q,n,k") and row.startswith("Hamming(7),2,7,4,3,3")
    status, out, _ = call(capsys, "code", "info", "--in", "hamming74.json", "--format", "table")
    assert "transitive       certified" in out
    assert call(capsys, "code", "dual", "--in", "hamming74.json", "--out", "dual.json")[0] == 0
    status, out, _ = call(capsys, "code", "mindist", "--in", "dual.json")
    assert json.loads(out) == {"d": 4}
    status, out, _ = call(capsys, "code", "check", "--in", "hamming74.json")
    assert json.loads(out)["ok"] is True


def test_claimed_distance_check(workdir, capsys):
    obj = io.code_to_json(codes.hamming(3))
    obj["meta"]["claimed_d"] = 4
    del obj["meta"]["d_interval"]
    io.write_json("claim.json", obj)
    status, out, _ = call(capsys, "code", "check", "--in", "claim.json")
    res = json.loads(out)
    assert status == 0 and res["claimed_d_ok"] is False and res["ok"] is False


def test_transforms(workdir, capsys):
    assert call(capsys, "code", "transform", "--op", "extend", "--in", "hamming74.json", "--out", "e.json")[0] == 0
    status, out, _ = call(capsys, "code", "info", "--in", "e.json")
    info = json.loads(out)
    assert (info["n"], info["k"], info["self_dual"]) == (8, 4, True)
    assert json.loads((workdir / "e.json").read_text())["meta"]["transform"]["kind"] == "extend"
    status, out, _ = call(capsys, "code", "transform", "--op", "uv", "--in", "hamming74.json", "--in2", "hamming74.json")
    assert status == 0 and len(json.loads(out)["generator"]) == 8
    status, _, err = call(capsys, "code", "transform", "--op", "sum", "--in", "hamming74.json")
    assert status == 2
    io.write_json("rs.json", io.code_to_json(codes.reed_solomon(field_new(2, 4), 4, 2)))
    status, out, _ = call(capsys, "code", "transform", "--op", "expand", "--subfield-q", "4", "--in", "rs.json")
    assert status == 0 and len(json.loads(out)["generator"][0]) == 8


def test_guard_exit_code_and_env_override(workdir, capsys, monkeypatch):
    status, _, err = call(capsys, "code", "mindist", "--in", "hamming74.json", "--max-codewords", "4")
    assert status == 3 and json.loads(err)["error"] == "guard_exceeded"
    monkeypatch.setenv("CONVCODES_MAX_CODEWORDS", "4")
    assert call(capsys, "code", "mindist", "--in", "hamming74.json")[0] == 3
    assert call(capsys, "code", "mindist", "--in", "hamming74.json", "--max-codewords", "16")[0] == 0
    monkeypatch.setenv("CONVCODES_MAX_CODEWORDS", "many")
    assert call(capsys, "code", "mindist", "--in", "hamming74.json")[0] == 2


def test_usage_errors(workdir, capsys):
    for argv in (["conv", "bogus"], ["code", "info"], ["nope"], ["code", "info", "--in", "x.json", "--frobnicate"]):
        status, _, err = call(capsys, *argv)
        assert status == 2 and "error" in json.loads(err)
    assert call(capsys, "code", "info", "--in", "missing.json")[0] == 2
    assert call(capsys, "conv", "build", "--in", "hamming74.json")[0] == 2
    assert call(capsys, "code", "mindist", "--in", "hamming74.json", "--max-codewords", "0")[0] == 2


def test_family_report_deterministic(workdir, capsys):
    spec = {"kind": "bch", "q": 4, "lengths": [5, 7, 9, 15], "designed_distance": 3}
    (workdir / "spec.json").write_text(json.dumps(spec))
    assert call(capsys, "family", "report", "--spec", "spec.json", "--out", "a.csv")[0] == 0
    assert call(capsys, "family", "report", "--spec", "spec.json", "--out", "b.csv")[0] == 0
    a, b = (workdir / "a.csv").read_bytes(), (workdir / "b.csv").read_bytes()
    assert a == b and a.startswith(b"j,n,k,gamma,memory,")
    status, out, _ = call(capsys, "family", "report", "--spec", "spec.json", "--format", "json")
    assert status == 0 and len(json.loads(out)["rows"]) == 3
    status, out, _ = call(capsys, "family", "report", "--spec", "spec.json", "--format", "table")
    assert status == 0 and len(out.splitlines()) == 4


def test_selftest_seeded(workdir, capsys):
    s1 = call(capsys, "selftest", "--seed", "7")
    s2 = call(capsys, "selftest", "--seed", "7")
    assert s1 == s2 and s1[0] == 0
    assert json.loads(s1[1])["failed"] == 0


def test_console_script_entry_point(workdir):
    proc = subprocess.run(
        [sys.executable, "-m", "convcodes.cli", "code", "mindist", "--in", "hamming74.json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"d": 3}
