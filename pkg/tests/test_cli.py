import csv
import io
import json
import subprocess
import sys

import pytest

from polarkit import distance, gf2
from polarkit.cli import main
from polarkit.gf2 import BinaryMatrix, write_kernel


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def restore_budgets():
    saved = gf2.MAX_SPAN_GENERATORS, distance.MAX_BRUTE_FORCE_SIZE
    yield
    gf2.MAX_SPAN_GENERATORS, distance.MAX_BRUTE_FORCE_SIZE = saved


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "G6H", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["distances"] == [1, 2, 2, 2, 4, 4]
    assert report["source"] == "bruteforce"
    assert round(report["exponent"], 3) == 0.451
    assert set(report) >= {"size", "distances", "exponent", "per_row_terms", "source"}


def test_analyze_table_and_csv(capsys):
    code, out, _ = run(capsys, "analyze", "G2 x G3L", "--format", "table")
    assert code == 0
    assert "1,1,3,2,2,6" in out and "0.398" in out and "composed" in out
    code, out, _ = run(capsys, "analyze", "G3H", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["index", "partial_distance", "log_term"]
    assert [r[1] for r in rows[1:4]] == ["1", "2", "2"]


def test_analyze_file_kernel(capsys, tmp_path):
    path = tmp_path / "identity4.pm"
    path.write_text(write_kernel(BinaryMatrix.identity(4)))
    code, out, _ = run(capsys, "analyze", f"file:{path}", "--format", "json")
    assert code == 0
    assert json.loads(out)["exponent"] == 0.0


def test_bad_kernel_file_is_usage_error(capsys, tmp_path):
    path = tmp_path / "bad.pm"
    path.write_text("2 2\n10\n1a\n")
    code, _, err = run(capsys, "analyze", f"file:{path}")
    assert code == 2
    assert "line 3" in err and "column 2" in err


def test_compose_with_external(capsys):
    code, out, _ = run(capsys, "compose", "G2^2 x GS16", "--external", "GS16:16:0.51825", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["size"] == 64
    assert abs(data["exponent"] - 0.5122) < 5e-4
    assert abs(sum(f["weight"] for f in data["factors"]) - 1) < 1e-12


def test_registry_file(capsys, tmp_path):
    path = tmp_path / "reg.json"
    path.write_text(json.dumps([{"name": "GS28", "size": 28, "exponent": 0.51462}]))
    code, out, _ = run(capsys, "compose", "G3H x GS28", "--registry", str(path), "--format", "json")
    assert code == 0
    assert abs(json.loads(out)["exponent"] - 0.4914) < 5e-4


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "G2 ^"],
        ["analyze", "G9"],
        ["compose", "G2", "--external", "X:2:1.5"],
        ["compose", "G2", "--external", "nonsense"],
        ["construct", "G2^2", "--rate", "1.5"],
        ["construct", "G2 x GS", "--external", "GS:16:0.5"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_budget_flag(capsys, tmp_path):
    path = tmp_path / "identity7.pm"
    path.write_text(write_kernel(BinaryMatrix.identity(7)))
    code, _, err = run(capsys, "--budget-span-bits", "3", "analyze", f"file:{path}")
    assert code == 2
    assert "budget" in err or "ceiling" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "10", "--identity-trials", "20", "--seed", "3", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["ok"] and report["seed"] == 3
    assert all(p["failed"] == 0 for p in report["properties"])


def test_verify_bad_sizes(capsys):
    code, _, _ = run(capsys, "verify", "--sizes", "2,5", "--trials", "1")
    assert code == 2


def test_construct_and_simulate(capsys, tmp_path):
    spec_path = tmp_path / "code.json"
    code, _, err = run(capsys, "construct", "G2 x G3H", "--rate", "0.5", "--eps", "0.5", "--out", str(spec_path))
    assert code == 0 and "N=6" in err
    spec = json.loads(spec_path.read_text())
    assert spec["block_length"] == 6 and len(spec["frozen_set"]) == 3

    csv_path = tmp_path / "bler.csv"
    code, _, err = run(
        capsys, "simulate", str(spec_path), "--channel", "bec", "--grid", "0.2,0.6",
        "--trials", "200", "--seed", "5", "--out", str(csv_path),
    )
    assert code == 0
    rows = list(csv.DictReader(csv_path.open()))
    assert [r["param"] for r in rows] == ["0.2", "0.6"]
    assert all(r["seed"] == "5" and r["trials"] == "200" for r in rows)
    assert "block errors" in err


def test_simulate_config(capsys, tmp_path):
    cfg = {
        "expression": "G2^3",
        "rate": 0.5,
        "design_eps": 0.5,
        "channel": {"type": "awgn", "param_grid": [2.0]},
        "trials": 100,
        "master_seed": 1,
    }
    path = tmp_path / "sim.json"
    path.write_text(json.dumps(cfg))
    code, out, _ = run(capsys, "simulate", str(path))
    assert code == 0
    first = out
    code, out, _ = run(capsys, "simulate", str(path), "--threads", "2")
    assert out == first

    cfg["channel"]["type"] = "bsc"
    path.write_text(json.dumps(cfg))
    code, _, err = run(capsys, "simulate", str(path))
    assert code == 2 and "bsc" in err


def test_simulate_plot(capsys, tmp_path):
    pytest.importorskip("matplotlib")
    spec_path = tmp_path / "code.json"
    run(capsys, "construct", "G2^2", "--out", str(spec_path))
    svg = tmp_path / "bler.svg"
    code, _, _ = run(capsys, "simulate", str(spec_path), "--grid", "1,3", "--trials", "50", "--plot", str(svg))
    assert code == 0
    assert svg.read_text().lstrip().startswith("<?xml")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "polarkit", "analyze", "G3L", "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["distances"] == [1, 1, 3]
