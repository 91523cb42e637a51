import csv
import io
import json

import pytest

from nagumo_periodic.cli import main
from nagumo_periodic.equilibria import NEWTON_TOL, Parameters, lde_residual


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_csv(capsys):
    code, out, err = run(capsys, "count", "--n-max", "6", "--k", "3", "--format", "csv")
    assert code == 0 and err.startswith("# config: ")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[4] == dict(n="5", k="3", total="243", necklaces="51", lyndon="48", bracelets="39",
                           lyndon_bracelets="36")


def test_count_verify(capsys):
    code, out, err = run(capsys, "count", "--n-max", "8", "--k", "2", "--verify")
    assert code == 0
    assert err.count("PASS") == 8 and "FAIL" not in err


def test_count_json(capsys):
    code, out, _ = run(capsys, "count", "--n-max", "3", "--k", "2", "--format", "json")
    assert [r["necklaces"] for r in json.loads(out)] == [2, 3, 4]


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--k", "2", "--format", "json")
    assert code == 0
    assert [r["representative"] for r in json.loads(out)] == ["0", "0001", "0011", "01", "0111", "1"]
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--symmetry", "tr", "--primitive-only", "--format", "csv")
    assert len(out.strip().splitlines()) == 1 + 7


def test_enumerate_budget_exit_code(capsys):
    code, _, err = run(capsys, "enumerate", "--n", "16", "--k", "3")
    assert code == 3 and "error" in err


def test_solve_round_trip(capsys, tmp_path):
    trace_file = tmp_path / "trace.csv"
    code, out, err = run(capsys, "solve", "--word", "00a1", "--a", "0.3", "--d", "0.004", "--trace", str(trace_file))
    assert code == 0 and '"word": "00a1"' in err
    rec = json.loads(out)
    assert rec["stability"] == "UNSTABLE" and rec["residual"] <= 1e-12
    assert lde_residual(rec["state"], Parameters(rec["a"], rec["d"], 4)) <= 10 * NEWTON_TOL
    lines = trace_file.read_text().splitlines()
    assert lines[0] == "d,u_1,u_2,u_3,u_4" and lines[-1].startswith("0.004,")


def test_solve_at_zero_coupling(capsys):
    code, out, _ = run(capsys, "solve", "--word", "0a1", "--a", "0.25", "--d", "0")
    assert json.loads(out)["state"] == [0.0, 0.25, 1.0]


def test_solve_past_fold_exit_code(capsys):
    code, out, err = run(capsys, "solve", "--word", "01", "--a", "0.5", "--d", "1")
    assert code == 4 and out == "" and "FOLD_DETECTED" in err


@pytest.mark.parametrize("argv", [
    ["solve", "--word", "0b1", "--a", "0.5", "--d", "0.1"],
    ["solve", "--word", "01", "--a", "1.5", "--d", "0.1"],
    ["solve", "--word", "01", "--a", "0.5", "--d", "-1"],
    ["count", "--n-max", "0"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_simulate_needs_exactly_one_start(capsys):
    code, _, err = run(capsys, "simulate", "--a", "0.5", "--d", "0.1")
    assert code == 2
    code, _, _ = run(capsys, "simulate", "--a", "0.5", "--d", "0.1", "--state", "0.1,x")
    assert code == 2


def test_simulate_step_too_large(capsys):
    code, _, err = run(capsys, "simulate", "--state", "0.1,0.2", "--a", "0.5", "--d", "0.1", "--dt", "2")
    assert code == 2 and "stability bound" in err


def test_simulate_csv(capsys):
    code, out, _ = run(capsys, "simulate", "--word", "0a1", "--a", "0.5", "--d", "0.0", "--t-end", "1",
                       "--dt", "0.1")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["t", "u_1", "u_2", "u_3"]
    assert rows[1] == ["0.0", "0.0", "0.5", "1.0"] and len(rows) == 12


def test_order(capsys):
    code, out, _ = run(capsys, "order", "--n", "3")
    assert code == 0 and "chain: 0 < 001 < 011 < 1" in out
    code, out, _ = run(capsys, "order", "--n", "4", "--format", "json")
    rec = json.loads(out)
    assert rec["nodes"] == ["0", "0001", "0011", "01", "0111", "1"] and len(rec["edges"]) == 6


def test_region_streams_csv(capsys):
    code, out, _ = run(capsys, "region", "--word", "01", "--a-min", "0.4", "--a-max", "0.6", "--points", "3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["a"] for r in rows] == ["0.4", "0.5", "0.6"]
    assert abs(float(rows[1]["d_star"]) - 1 / 24) < 1e-4 and rows[1]["status"] == "FOLD_DETECTED"


def test_region_plain_to_file(capsys, tmp_path):
    target = tmp_path / "r.txt"
    code, out, _ = run(capsys, "region", "--word", "0", "--points", "2", "--d-cap", "0.5", "--format", "plain",
                       "-o", str(target))
    assert out == "" and target.read_text().split() == ["0.025", "0.5", "0.975", "0.5"]


def test_verify_agreement(capsys):
    code, out, _ = run(capsys, "verify", "--word", "0011", "--a", "0.5", "--d", "0.005", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["agree"] and rec["dynamic_stable"] and rec["jacobian_stability"] == "STABLE"


def test_outputs_are_deterministic(capsys):
    argv = ["solve", "--word", "0a11", "--a", "0.4", "--d", "0.003", "--format", "csv"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
