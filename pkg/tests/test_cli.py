import json
import subprocess
import sys

from bergkrein.cli import main, verify_paper_example


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rho_command(capsys):
    code, out, err = run_cli(capsys, "rho", "0", "0.5")
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == "bergkrein-report/1"
    assert abs(rep["outputs"]["rho"] - 0.661437827766148) < 1e-12
    assert "[ok]" in err


def test_rho_bad_input(capsys):
    code, _, err = run_cli(capsys, "rho", "nonsense", "0.5")
    assert code == 2
    assert "error:" in err


def test_rho_outside_disk(capsys):
    code, _, _ = run_cli(capsys, "rho", "1.5", "0")
    assert code == 2


def test_pick_check_exact(capsys):
    code, out, _ = run_cli(capsys, "pick-check",
                           "--nodes", "2/3,3/4,0", "--targets", "1/3,1/4,0",
                           "--exact")
    assert code == 1  # classical Pick matrix is not PSD here
    rep = json.loads(out)
    assert rep["outputs"]["determinant"] == "-11/1260"
    assert rep["outputs"]["verdict"]["is_psd"] is False


def test_pick_check_squared_exact(capsys):
    code, out, _ = run_cli(capsys, "pick-check",
                           "--nodes", "2/3,3/4,0", "--targets", "1/3,1/4,0",
                           "--kernel", "squared", "--exact")
    assert code == 0
    rep = json.loads(out)
    assert rep["outputs"]["determinant"] == "45119/1587600"
    assert rep["outputs"]["verdict"]["is_psd"] is True


def test_pick_check_float(capsys):
    code, out, _ = run_cli(capsys, "pick-check",
                           "--nodes", "0.1,0.2", "--targets", "0.05,0.1")
    assert code == 0
    rep = json.loads(out)
    assert rep["outputs"]["verdict"]["mode"] == "float"


def test_pick_check_rejects_decimal_in_exact_mode(capsys):
    code, _, _ = run_cli(capsys, "pick-check",
                         "--nodes", "0.5,0.1", "--targets", "0.2,0.1",
                         "--exact")
    assert code == 2


def test_interpolate_feasible(capsys):
    code, out, _ = run_cli(capsys, "interpolate",
                           "--nodes", "0,0.5", "--targets", "0,0.25",
                           "--seed", "3", "--trials", "4")
    assert code == 0
    rep = json.loads(out)
    assert rep["seed"] == 3
    assert all(c["passed"] for c in rep["checks"])
    assert len(rep["outputs"]["chain"]) == 3


def test_interpolate_infeasible(capsys):
    code, out, _ = run_cli(capsys, "interpolate",
                           "--nodes", "0,0.5", "--targets", "0,0.75")
    assert code == 1
    rep = json.loads(out)
    assert rep["outputs"]["error"] == "infeasible"
    assert rep["outputs"]["rho_targets"] > rep["outputs"]["rho_nodes"]


def test_schur_interpolate(capsys):
    code, out, _ = run_cli(capsys, "schur-interpolate",
                           "--nodes", "0,0.5", "--targets", "0,0.25")
    assert code == 0
    rep = json.loads(out)
    assert all(c["passed"] for c in rep["checks"])


def test_kernel_eval(capsys):
    code, out, _ = run_cli(capsys, "kernel-eval",
                           "--z", "0.4,0.2", "--lam", "0.3,0.1",
                           "--truncation", "60")
    assert code == 0
    rep = json.loads(out)
    assert rep["outputs"]["residual"] <= rep["outputs"]["bound"] + 1e-12


def test_kernel_eval_outside_ball(capsys):
    code, _, _ = run_cli(capsys, "kernel-eval", "--z", "1.2,0", "--lam", "0.1,0")
    assert code == 2


def test_verify_identities_small(capsys):
    code, out, _ = run_cli(capsys, "verify-identities",
                           "--seed", "1", "--trials", "40")
    assert code == 0
    rep = json.loads(out)
    assert all(c["passed"] for c in rep["checks"])


def test_verify_paper_example_checks():
    rep = verify_paper_example()
    assert len(rep["checks"]) == 8
    assert all(c["passed"] for c in rep["checks"])
    names = " ".join(c["name"] for c in rep["checks"])
    assert "-11/1260" in names and "45119/1587600" in names


def test_verify_paper_example_cli(capsys):
    code, out, err = run_cli(capsys, "verify-paper-example")
    assert code == 0
    assert err.count("[ok]") == 8
    rep = json.loads(out)
    assert rep["outputs"]["pick"][0][0] == "8/5"


def test_missing_subcommand(capsys):
    assert main([]) == 2


def test_deterministic_bytes():
    cmd = [sys.executable, "-m", "bergkrein.cli", "interpolate",
           "--nodes", "0.1,0.5", "--targets", "0.05,0.3",
           "--seed", "11", "--trials", "4"]
    a = subprocess.run(cmd, capture_output=True, check=True)
    b = subprocess.run(cmd, capture_output=True, check=True)
    assert a.stdout == b.stdout
    assert a.stdout.strip().startswith(b'{')
