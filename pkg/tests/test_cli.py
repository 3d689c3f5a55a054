import csv
import io
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from glshp import cli, lsq, pipeline
from glshp.fracalg import evaluate
from glshp.pipeline import solve
from glshp.problemfile import dump_problem
from glshp.problems import example1, example3


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_example1(capsys):
    code, out, _ = run(["solve", "--example", "1", "--alpha", "1"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["params"]["K0"] == pytest.approx(1.0, abs=1e-10)
    assert rep["params"]["K2"] == pytest.approx(0.0, abs=1e-10)
    assert rep["jvalue"] <= 1e-18
    assert list(rep) == [
        "problem", "kind", "alpha", "beta", "basis", "params", "jvalue", "j_hpm",
        "grad_norm", "iterations", "converged", "start", "wronskian", "epsilon",
    ]
    assert [b["fixed"] for b in rep["basis"]["u"]] == [False, True, False]


def test_solve_example3_grid(capsys):
    code, out, _ = run(["solve", "--example", "3", "--alpha", "1", "--beta", "1", "--grid", "5x5"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "t", "u", "v"]
    assert len(rows) == 26
    x, t, u, v = map(float, rows[-1])
    assert (x, t) == (1.0, 1.0)
    assert u == pytest.approx(2.0, abs=1e-10) and v == pytest.approx(1.0, abs=1e-10)
    # t outer, x inner
    assert [r[:2] for r in rows[1:3]] == [["0", "0"], ["0.25", "0"]]
    assert "\r" not in out


def test_solve_fractional_dominates(capsys):
    code, out, _ = run(["solve", "--example", "1", "--alpha", "0.9", "--epsilon", "0.1"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["converged"]
    assert rep["jvalue"] <= rep["j_hpm"]
    eps = rep["epsilon"]
    assert eps["residual_integral"] <= eps["sup_abs_residual"] ** 2


def test_solve_json_grid_and_sweep(capsys):
    code, out, _ = run(["solve", "--example", "2", "--sweep", "0.98:1:0.01", "--grid", "3x2", "--format", "json"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert [r["alpha"] for r in rep["runs"]] == [0.98, 0.99, 1.0]
    assert rep["runs"][-1]["grid"]["u"][-1][-1] == pytest.approx(2.0, abs=1e-10)


def test_solve_sweep_csv(capsys):
    code, out, _ = run(["solve", "--example", "1", "--sweep", "0.9:1:0.1", "--grid", "2x2"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["alpha", "x", "t", "u"]
    assert len(rows) == 9


def test_wronskian_example1(capsys):
    code, out, _ = run(["wronskian", "--example", "1", "--alpha", "1", "--x", "0.2", "--t", "0.5"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["value"] == pytest.approx(-0.00936, abs=1e-12)
    assert rep["closed_form"] == pytest.approx(-0.102, abs=1e-12)
    assert rep["independent"] is True


def test_wronskian_example2(capsys):
    code, out, _ = run(["wronskian", "--example", "2", "--alpha", "1", "--x", "0.3", "--t", "0.4"], capsys)
    rep = json.loads(out)
    assert rep["value"] == pytest.approx(0.0046125, abs=1e-12)
    assert rep["closed_form"] == pytest.approx(0.0444, abs=1e-12)


def test_wronskian_v(capsys):
    code, out, _ = run(["wronskian", "--example", "3", "--beta", "0.8", "--unknown", "v"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["order"] == "b" and rep["order_value"] == 0.8


def test_wronskian_origin_fails(capsys):
    code, out, _ = run(["wronskian", "--example", "1", "--x", "0", "--t", "0"], capsys)
    assert code == 3
    assert json.loads(out)["value"] == 0.0


def test_compare_sweep(capsys):
    code, out, _ = run(["compare", "--example", "1", "--sweep", "0.89:1.0:0.01"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 12
    assert float(rows[-1]["alpha"]) == 1.0
    assert float(rows[-1]["J_glshp"]) <= 1e-18
    assert all(float(r["J_glshp"]) <= float(r["J_hpm"]) for r in rows)


def test_compare_degenerate_sweep(capsys):
    code, out, _ = run(["compare", "--example", "3", "--sweep", "0.95:0.95:0.01"], capsys)
    assert code == 0
    assert out.count("\n") == 2


def test_problem_file(tmp_path, capsys):
    path = tmp_path / "p.txt"
    path.write_text(dump_problem(example1()))
    code, out, _ = run(["solve", "--problem", str(path)], capsys)
    assert code == 0
    assert json.loads(out)["params"]["K0"] == pytest.approx(1.0, abs=1e-10)


def test_problem_file_errors(tmp_path, capsys):
    path = tmp_path / "p.txt"
    path.write_text(dump_problem(example1()).replace("u*u_tt", "q*u_tt"))
    code, _, err = run(["solve", "--problem", str(path)], capsys)
    assert code == 1 and "q*u_tt" in err and "line 13" in err
    path.write_text(dump_problem(example1()).replace("alpha = 1.0", "alpha = 0"))
    code, _, err = run(["solve", "--problem", str(path)], capsys)
    assert code == 1 and "order bound" in err
    code, _, err = run(["solve", "--problem", str(tmp_path / "missing.txt")], capsys)
    assert code == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--example", "1", "--grid", "1x5"],
        ["solve", "--example", "1", "--sweep", "0.5:0.4:0.1"],
        ["solve", "--example", "1", "--format", "csv"],
        ["solve", "--example", "1", "--alpha", "1.5"],
        ["solve", "--example", "1", "--x", "2"],
        ["solve", "--example", "1", "--epsilon", "-1"],
        ["solve"],
        ["wronskian", "--example", "1", "--unknown", "v"],
    ],
)
def test_input_errors(argv, capsys):
    code, _, _ = run(argv, capsys)
    assert code == 1


def test_no_convergence_exit(monkeypatch, capsys, caplog):
    real = lsq.minimize
    monkeypatch.setattr(pipeline, "minimize", lambda f, s, seed: real(f, s, seed=seed, max_iter=1, n_random=0))
    code, out, _ = run(["solve", "--example", "2", "--alpha", "0.9"], capsys)
    assert code == 2
    assert json.loads(out)["converged"] is False
    assert "no start" in caplog.text


def test_invariant_breach_exit(monkeypatch, capsys):
    bad = lsq.FitResult((9.0, 9.0), 1e6, 0.0, 0, True, "zero", ("K0", "K2"))
    monkeypatch.setattr(cli, "minimize", lambda *a, **k: bad)
    code, _, _ = run(["compare", "--example", "1"], capsys)
    assert code == 4


def test_certificate_failure_in_solve(capsys):
    code, _, err = run(["solve", "--example", "1", "--x", "0", "--t", "0"], capsys)
    assert code == 3 and "not certified" in err


def test_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["solve", "--example", "3", "--alpha", "0.9", "--beta", "0.95", "--epsilon", "0.5", "--out"]
    assert cli.main(argv + [str(a)]) == 0
    assert cli.main(argv + [str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    g1, g2 = tmp_path / "g1.csv", tmp_path / "g2.csv"
    argv = ["solve", "--example", "1", "--alpha", "0.93", "--grid", "11x7", "--out"]
    cli.main(argv + [str(g1)])
    cli.main(argv + [str(g2)])
    assert g1.read_bytes() == g2.read_bytes()


def test_seed_does_not_move_optimum(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    cli.main(["solve", "--example", "1", "--alpha", "0.95", "--seed", "1", "--out", str(a)])
    cli.main(["solve", "--example", "1", "--alpha", "0.95", "--seed", "0x5EED", "--out", str(b)])
    pa, pb = json.loads(a.read_text())["params"], json.loads(b.read_text())["params"]
    assert pa == pytest.approx(pb, abs=1e-9)


def test_csv_roundtrip_and_direct_eval(tmp_path):
    out = tmp_path / "g.csv"
    cli.main(["solve", "--example", "3", "--alpha", "0.91", "--beta", "0.97", "--grid", "9x6", "--out", str(out)])
    sol = solve(example3(0.91, 0.97))
    X, T, vals = sol.grid(9, 6)
    rows = list(csv.reader(out.open(newline="")))[1:]
    got = np.array([[float(c) for c in r] for r in rows])
    assert np.array_equal(got[:, 0], X.ravel())
    assert np.array_equal(got[:, 1], T.ravel())
    assert np.array_equal(got[:, 2], vals["u"].ravel())
    assert np.array_equal(got[:, 3], vals["v"].ravel())
    orders = sol.problem.orders
    su, sv = sol.series("u"), sol.series("v")
    for (x, t, u, v) in got:
        assert evaluate(su, x, t, orders) == u
        assert evaluate(sv, x, t, orders) == v


def test_console_script_and_logging(tmp_path):
    env = dict(os.environ, GLSHP_LOG="debug")
    proc = subprocess.run(
        [sys.executable, "-m", "glshp.cli", "compare", "--example", "1", "--alpha", "1"],
        capture_output=True, text=True, env=env, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("alpha,J_hpm,J_glshp,ratio\n")
    assert "DEBUG" in proc.stderr


@pytest.mark.parametrize("hashseed", ["0", "12345"])
def test_byte_identical_across_processes(tmp_path, hashseed):
    argv = ["solve", "--example", "3", "--alpha", "0.9", "--epsilon", "0.5"]
    outs = []
    for seed in ("1", hashseed):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        proc = subprocess.run([sys.executable, "-m", "glshp.cli", *argv], capture_output=True, env=env, check=True)
        outs.append(proc.stdout)
    assert outs[0] == outs[1]
