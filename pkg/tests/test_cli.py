import json
import subprocess
import sys

import pytest

from graphcomp.cli import main

TWO_BLOCKS = [[0, 0, 0], [1, 0, 1], [2, 0, 0], [3, 3, 1], [4, 1, 2], [5, 3, 0]]


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_encode_dot(capsys):
    code, out = run(capsys, "encode", "--f", "2,0,3", "--depth", "2", "--format", "dot")
    assert code == 0
    assert out.out.startswith("graph G {\n") and out.out.endswith("}\n")
    assert '[label="rho"]' in out.out or "label=" in out.out


def test_decode_json(capsys):
    code, out = run(capsys, "decode", "--f", "2,0,3", "--horizon", "1,6,1")
    assert code == 0
    doc = json.loads(out.out)
    assert doc["in_range"] == {"0": True, "1": False, "2": True, "3": True, "4": False, "5": False}


def test_fc_trace(capsys):
    code, out = run(capsys, "fc", "--f", "5,2,6,0", "--format", "trace")
    assert code == 0
    lines = out.out.splitlines()
    assert len(lines) == 5 and lines[0] == "stage=1 attend=none"
    assert lines[-1] == "stage=5 attend=0"


def test_sigma2(capsys):
    code, out = run(capsys, "sigma2", "--theta", "geq:2", "--k", "3", "--horizon", "1,1,32")
    assert code == 0
    doc = json.loads(out.out)
    assert doc["least_m"] == doc["brute_force"] == 2


def test_partition(capsys, tmp_path):
    d = tmp_path / "d.json"
    d.write_text(json.dumps(TWO_BLOCKS))
    code, out = run(capsys, "partition", "--d-file", str(d))
    assert code == 0
    doc = json.loads(out.out)
    assert doc["verdict"] == "consistent"
    assert doc["blocks"]["0"] == {"p": 0, "X": [0, 1]}
    assert doc["blocks"]["1"] == {"p": 1, "X": [2]}


def test_partition_violation_exit(capsys, tmp_path):
    d = tmp_path / "d.json"
    d.write_text(json.dumps([[0, 0, 0], [1, 0, 1], [2, 1, 1], [3, 1, 2]]))
    code, out = run(capsys, "partition", "--d-file", str(d), "--horizon", "1,3,4")
    assert code == 2
    assert json.loads(out.out)["verdict"] == "violation"


@pytest.mark.parametrize("argv,answer", [
    (["--name", "cn_to_p2", "--p", "complement-of:2"], 2),
    (["--name", "cn_to_pk", "--p", "complement-of:5", "--k", "3"], 5),
    (["--name", "dk_to_cn", "--graph", "6:0-1,1-2,0-2,3-4,4-5,3-5"], 4),
    (["--name", "lpohat_to_p", "--streams", "3,-,0"], [0, 2]),
])
def test_reduce(capsys, argv, answer):
    code, out = run(capsys, "reduce", *argv)
    doc = json.loads(out.out)
    assert code == 0 and doc["solution_valid"] and doc["answer"] == answer


@pytest.mark.parametrize("argv", [
    [],
    ["nosuch"],
    ["encode"],
    ["encode", "--f", "1,1"],
    ["encode", "--f", "a,b"],
    ["fc", "--f", "1,2", "--horizon", "1,1,9"],
    ["sigma2", "--theta", "lt:3"],
    ["partition"],
    ["partition", "--d-file", "/nonexistent.json"],
    ["reduce", "--name", "nope"],
    ["reduce", "--name", "cn_to_p2"],
    ["verify", "--suite", "nope"],
    ["decode", "--f", "1", "--horizon", "x"],
])
def test_usage_errors(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 3
    assert out.err


def test_out_file(capsys, tmp_path):
    target = tmp_path / "g.json"
    code, out = run(capsys, "encode", "--f", "1,0", "--format", "json", "--out", str(target))
    assert code == 0 and out.out == ""
    assert json.loads(target.read_text())["vertices"]


def test_module_entry_point(tmp_path):
    a, b = tmp_path / "a.dot", tmp_path / "b.dot"
    for target in (a, b):
        subprocess.run([sys.executable, "-m", "graphcomp", "encode", "--f", "2,0,3", "--depth", "2",
                        "--format", "dot", "--out", str(target)], check=True)
    assert a.read_bytes() == b.read_bytes()
