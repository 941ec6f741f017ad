import csv
import io
import json
import subprocess
import sys

import pytest

from frogbound.cli import main
from frogbound.records import format_number


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_bound_json(capsys):
    code, out = run(capsys, "bound", "--d", "2", "--format", "json")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 1
    rec = json.loads(lines[0])
    assert rec["kind"] == "bounds-row" and rec["schema_version"] == "1"
    assert rec["payload"]["ub_original"] == 0.75
    assert rec["payload"]["ub_fmrt"] == 0.720836
    assert rec["payload"]["pbar_n_1"] == 1.0


def test_bound_csv_matches_json(capsys):
    _, out_csv = run(capsys, "bound", "--d", "2", "--format", "csv")
    _, out_json = run(capsys, "bound", "--d", "2", "--format", "json")
    rows = list(csv.DictReader(io.StringIO(out_csv)))
    assert len(rows) == 1
    header = out_csv.splitlines()[0].split(",")
    assert header[:7] == ["d", "ub_original", "ub_fmrt", "pbar", "vbar", "residual_Q", "residual_R"]
    assert header[7:] == [f"pbar_n_{n}" for n in (1, 2, 5, 10, 50, 200)] + ["schema_version"]
    payload = json.loads(out_json)["payload"]
    for key, value in payload.items():
        assert float(rows[0][key]) == value


def test_bound_rejects_small_degree(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bound", "--d", "1"])
    assert exc.value.code == 2


def test_scan_rows_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["scan", "--d-min", "2", "--d-max", "4", "--out", str(a)]) == 0
    assert main(["scan", "--d-min", "2", "--d-max", "4", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()
    rows = list(csv.DictReader(io.StringIO(a.read_text())))
    assert [r["d"] for r in rows] == ["2", "3", "4"]


def test_scan_full_range_chain(capsys):
    code, out = run(capsys, "scan", "--d-min", "2", "--d-max", "200", "--n-samples", "", "--format", "json")
    assert code == 0
    recs = [json.loads(line)["payload"] for line in out.splitlines()]
    assert len(recs) == 199
    for r in recs:
        assert r["pbar"] < r["ub_fmrt"] < r["ub_original"]


def test_scan_rejects_reversed_range():
    with pytest.raises(SystemExit) as exc:
        main(["scan", "--d-min", "5", "--d-max", "3"])
    assert exc.value.code == 2


def test_scan_io_failure(tmp_path, capsys):
    code = main(["scan", "--d-min", "2", "--d-max", "2", "--out", str(tmp_path / "no" / "x.csv")])
    assert code == 1


@pytest.mark.parametrize("p,expected", [("0", 0.0), ("1", 1.0)])
def test_simulate_endpoints(capsys, p, expected):
    code, out = run(capsys, "simulate", "--d", "2", "--p", p, "--trials", "100", "--seed", "7", "--format", "json")
    assert code == 0
    assert json.loads(out)["payload"]["point"] == expected


def test_simulate_same_output_across_workers(capsys):
    args = ["simulate", "--d", "2", "--p", "0.75", "--trials", "200", "--cap", "100", "--seed", "7"]
    _, one = run(capsys, *args)
    _, two = run(capsys, *args, "--workers", "2")
    assert one == two


@pytest.mark.parametrize("bad", [["--p", "1.5"], ["--p", "0.5", "--trials", "0"], ["--p", "x"]])
def test_simulate_bad_arguments(bad):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--d", "2", *bad])
    assert exc.value.code == 2


def test_verify_fast(capsys):
    code, out = run(capsys, "verify", "--level", "fast", "--format", "json")
    assert code == 0
    recs = {json.loads(l)["payload"]["check"]: json.loads(l)["payload"] for l in out.splitlines()}
    assert recs["phi3-identity"]["deviation"] <= 1e-14
    assert all(r["passed"] for r in recs.values())
    _, again = run(capsys, "verify", "--level", "fast", "--format", "json")
    assert again == out


def test_verify_failure_exit_code(monkeypatch, capsys):
    from frogbound import cli, verify

    failing = verify.CheckResult("forced", False, 1.0, 0.0)
    monkeypatch.setattr(cli, "run_checks", lambda level, seed: [failing])
    assert main(["verify"]) == 3


@pytest.mark.slow
def test_verify_full(capsys):
    code, out = run(capsys, "verify", "--level", "full", "--seed", "42", "--format", "json")
    recs = {json.loads(l)["payload"]["check"]: json.loads(l)["payload"] for l in out.splitlines()}
    assert recs["hit-prob-n2"]["passed"]
    assert recs["hit-prob-n2"]["deviation"] <= recs["hit-prob-n2"]["tolerance"]
    assert code == 0


def test_number_format():
    assert format_number(0.1 + 0.2) == "0.3"
    assert format_number(2.0 / 3.0) == "0.666666666667"
    assert format_number(1.0) == "1"
    assert format_number(12) == "12"
    assert format_number(True) == "true"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "frogbound", "bound", "--d", "3", "--n-samples", "1"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout.splitlines()[1].startswith("3,")
