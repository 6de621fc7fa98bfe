"""Command-line behavior: exit codes, round trips, determinism."""

import json
import subprocess
import sys

CLI = [sys.executable, "-m", "denpds.cli"]


def run(*args, **kw):
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, **kw
    )


def test_params_table():
    res = run("params", "-p", "2", "-m", "2", "-l", "1", "-r", "1")
    assert res.returncode == 0
    assert "(64, 18, 2, 6)" in res.stdout
    assert "(64, 45, 32, 30)" in res.stdout
    assert "negative-latin(n=8, r=2)" in res.stdout


def test_params_json():
    res = run("params", "-p", "3", "-m", "2", "-l", "1", "-r", "1", "--format", "json")
    doc = json.loads(res.stdout)
    assert doc["primal"] == {"v": 729, "k": 168, "lambda": 27, "mu": 42}
    assert doc["code"]["primal"] == {"n": 84, "dim": 6, "w1": 63, "w2": 54}


def test_grid_rows():
    res = run("grid", "p=2", "m=2..3", "l=1", "r=all")
    assert res.returncode == 0
    lines = res.stdout.strip().splitlines()
    assert len(lines) == 3 + 4  # r ranges 0..m for m = 2 and 3
    res2 = run("params", "--grid", "p=2", "s=1", "m=2..3", "l=1", "r=all")
    assert res2.returncode == 0
    assert res2.stdout == res.stdout


def test_usage_errors_exit_two():
    assert run("params", "-p", "2", "-m", "2", "-l", "1", "-r", "9").returncode == 2
    assert run("params", "-p", "2", "-m", "2").returncode == 2
    assert run("construct", "-p", "2", "-m", "2", "-l", "1").returncode == 2
    assert run("nonsense").returncode == 2


def test_construct_verify_roundtrip(tmp_path):
    out = tmp_path / "d.json"
    res = run("construct", "-p", "2", "-m", "2", "-l", "1", "-r", "1", "-o", str(out))
    assert res.returncode == 0
    doc = json.loads(out.read_text())
    assert len(doc["elements"]) == 18
    assert doc["claimed"] == {"v": 64, "k": 18, "lambda": 2, "mu": 6}
    ver = run("verify", "--set", str(out), "--format", "text")
    assert ver.returncode == 0
    assert "RESULT: PASS" in ver.stdout


def test_construct_dual_and_degenerate(tmp_path):
    out = tmp_path / "dd.json"
    res = run(
        "construct", "-p", "2", "-m", "2", "-l", "1", "-r", "1",
        "--family", "dual", "-o", str(out),
    )
    assert res.returncode == 0
    assert len(json.loads(out.read_text())["elements"]) == 45
    res0 = run("construct", "-p", "2", "-m", "2", "-l", "1", "-r", "0", "-o", str(out))
    assert res0.returncode == 0
    doc = json.loads(out.read_text())
    assert len(doc["elements"]) == 3
    assert doc["degenerate"] is True


def test_verify_corrupted_file_exits_one(tmp_path):
    out = tmp_path / "d.json"
    run("construct", "-p", "2", "-m", "2", "-l", "1", "-r", "1", "-o", str(out))
    doc = json.loads(out.read_text())
    doc["elements"] = doc["elements"][1:]  # drop one element
    out.write_text(json.dumps(doc))
    ver = run("verify", "--set", str(out))
    assert ver.returncode == 1
    rep = json.loads(ver.stdout)
    assert rep["ok"] is False
    names = {c["name"]: c["status"] for c in rep["checks"]}
    assert names["pds-differences"] == "fail"


def test_cap_exceeded_exits_three():
    res = run(
        "construct", "-p", "2", "-m", "2", "-l", "1", "-r", "1", "--table-cap", "32"
    )
    assert res.returncode == 3


def test_neighbor_cap_skip_behavior(tmp_path):
    """Oversized neighbor oracle is skipped; other checks still decide."""
    res = run(
        "verify", "-p", "2", "-m", "2", "-l", "1", "-r", "1", "--neighbor-cap", "16"
    )
    assert res.returncode == 0
    rep = json.loads(res.stdout)
    names = {c["name"]: c for c in rep["checks"]}
    assert names["common-neighbors"]["details"]["sampled"] is True


def test_dual_subcommand(tmp_path):
    out = tmp_path / "dual.json"
    res = run("dual", "-p", "2", "-m", "2", "-l", "1", "-r", "1", "-o", str(out))
    assert res.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["provenance"] == "delsarte-dual"
    assert len(doc["elements"]) == 45
    ver = run("verify", "--set", str(out))
    assert ver.returncode == 0


def test_code_and_geometry(tmp_path):
    code_out = tmp_path / "code.json"
    mat_out = tmp_path / "gm.txt"
    res = run(
        "code", "-p", "2", "-m", "2", "-l", "1", "-r", "1",
        "-o", str(code_out), "--matrix-out", str(mat_out),
    )
    assert res.returncode == 0
    doc = json.loads(code_out.read_text())
    assert doc["ok"] and doc["weight_enumerator"] == {"0": 1, "8": 45, "12": 18}
    rows = mat_out.read_text().strip().splitlines()
    assert len(rows) == 6 and all(len(r.split()) == 18 for r in rows)
    geo = run("geometry", "-p", "3", "-m", "2", "-l", "1", "-r", "1")
    assert geo.returncode == 0
    gdoc = json.loads(geo.stdout)
    assert gdoc["hyperplane_profile"] == {"21": 84, "30": 280}
    assert len(gdoc["points"]) == 84  # ternary digits, space separated
    assert all(set(pt.split()) <= {"0", "1", "2"} for pt in gdoc["points"])


def test_export_graph_formats(tmp_path):
    res = run("export-graph", "-p", "2", "-m", "2", "-l", "1", "-r", "0")
    lines = res.stdout.strip().splitlines()
    assert lines[0] == "64 96"
    assert len(lines) == 97
    u, w = map(int, lines[1].split())
    assert u < w
    dim = run(
        "export-graph", "-p", "2", "-m", "2", "-l", "1", "-r", "0",
        "--graph-format", "dimacs",
    )
    dlines = dim.stdout.strip().splitlines()
    assert dlines[0] == "p edge 64 96"
    assert dlines[1].startswith("e ")


def test_byte_identical_reruns(tmp_path):
    args = ["verify", "-p", "2", "-m", "2", "-l", "1", "-r", "1"]
    a, b = run(*args), run(*args)
    assert a.stdout == b.stdout
    par = run(*args, "--parallel", "4")
    assert par.stdout == a.stdout
    c1 = run("construct", "-p", "3", "-m", "2", "-l", "1", "-r", "1")
    c2 = run("construct", "-p", "3", "-m", "2", "-l", "1", "-r", "1")
    assert c1.stdout == c2.stdout


def test_seedless_flag_accepted():
    res = run("verify", "-p", "2", "-m", "2", "-l", "1", "-r", "1", "--seedless")
    assert res.returncode == 0


def test_env_cap_override(tmp_path):
    import os

    env = dict(os.environ, DENPDS_TABLE_CAP="32")
    res = subprocess.run(
        CLI + ["construct", "-p", "2", "-m", "2", "-l", "1", "-r", "1"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert res.returncode == 3


def test_subspace_flags(tmp_path):
    res = run(
        "verify", "-p", "2", "-m", "3", "-l", "1", "-r", "2",
        "--subspace-exps", "1,2", "--format", "text",
    )
    assert res.returncode == 0 and "RESULT: PASS" in res.stdout
    res2 = run(
        "verify", "-p", "2", "-m", "2", "-l", "1", "-r", "1",
        "--subspace-coords", "0,1",
    )
    assert res2.returncode == 0
