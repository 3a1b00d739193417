import csv
import io
import json
import subprocess
import sys

import pytest

from binring import barcobar as bc
from binring import spaces as sp
from binring.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cobar_num_report(capsys):
    code, out, _ = run(capsys, "cobar", "num", "--no-timing")
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    assert rep["schema"] == "binring.report/1"
    assert rep["config"] == {"command": "cobar", "target": "num", "seed": 0} and rep["result"]["window"] == {"n_max": 6, "d_max": 8}
    assert set(rep["result"]["nonzero"]) == {"(0,0)", "(1,1)"}
    assert "wall_time_s" not in rep


def test_timing_present_by_default(capsys):
    _, out, _ = run(capsys, "witt", "3", "2")
    assert json.loads(out)["wall_time_s"] >= 0


@pytest.mark.parametrize(
    "argv",
    [
        ("cobar", "divided", "--window-n", "4", "--window-d", "5"),
        ("bar", "dual-numbers", "--window-d", "5"),
        ("space", "rp2"),
        ("kunneth", "circle", "sphere2"),
        ("alpha1", "--samples", "30"),
        ("binomiality", "circle", "--samples", "20"),
        ("conservativity", "all", "--window-d", "4"),
        ("acyclic", "--samples", "10"),
    ],
)
def test_byte_identical_reruns(capsys, argv):
    first = run(capsys, *argv, "--no-timing")
    second = run(capsys, *argv, "--no-timing")
    assert first[0] == 0
    assert first == second


def test_csv_table(capsys):
    code, out, _ = run(capsys, "cobar", "num", "--format", "csv", "--window-n", "2", "--window-d", "3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 3 * 4
    assert {(r["n"], r["d"]) for r in rows if r["group"] != "0"} == {("0", "0"), ("1", "1")}


def test_csv_flat(capsys):
    code, out, _ = run(capsys, "witt", "2", "3", "--format", "csv", "--no-timing")
    pairs = dict(csv.reader(io.StringIO(out)))
    assert code == 0 and pairs["result.group"] == "Z/8"


def test_pretty(capsys):
    code, out, _ = run(capsys, "space", "torus", "--format", "pretty")
    assert code == 0 and out.startswith("space: PASS") and "wall time" in out


def test_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "dualcheck", "num", "--window-d", "5", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["passed"]


def test_space_file(capsys, tmp_path):
    path = tmp_path / "x.json"
    path.write_text(json.dumps(sp.torus().to_json()))
    code, out, _ = run(capsys, "space", "file", "--file", str(path), "--no-timing")
    assert code == 0 and json.loads(out)["result"]["groups"] == {"0": "Z", "1": "Z^2", "2": "Z"}


def test_coalgebra_file(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(bc.num_coalgebra_multi(2, 4).to_json()))
    code, out, _ = run(capsys, "cobar", "file", "--file", str(path), "--window-n", "3", "--window-d", "4")
    assert code == 0 and json.loads(out)["result"]["nonzero"]["(1,1)"] == "Z^2"


def test_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(bc, "num_coalgebra", bc.divided_power_dual)
    code, out, _ = run(capsys, "cobar", "num", "--window-n", "3", "--window-d", "3")
    rep = json.loads(out)
    assert code == 1 and not rep["passed"] and any("(2,2)" in f for f in rep["failures"])


@pytest.mark.parametrize(
    "argv",
    [
        ("cobar", "num", "--window-n", "9", "--window-d", "8"),
        ("cobar", "nonsense"),
        ("cobar", "file"),
        ("space", "klein"),
        ("witt", "4", "1"),
        ("conservativity", "nope"),
        ("cobar", "file", "--file", "/nonexistent.json"),
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert "error" in json.loads(err)


def test_non_coassociative_file(capsys, tmp_path):
    obj = bc.num_coalgebra(3).to_json()
    obj["reduced_diagonal"][1]["entries"] = [[0, 0, "5"]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    code, _, err = run(capsys, "cobar", "file", "--file", str(path), "--window-d", "3")
    assert code == 2 and "coassociative" in err


def test_argparse_error(capsys):
    code, _, _ = run(capsys, "nosuchcommand")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "binring", "witt", "2", "2", "--no-timing"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["group"] == "Z/4"
