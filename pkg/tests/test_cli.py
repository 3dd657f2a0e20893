"""Command-line contract: formats, determinism, exit codes."""

import json
import subprocess
import sys

import pytest

K3_DIMACS = "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n"
FOOTNOTE_DIMACS = "p edge 3 1\ne 1 2\n"
SINGLE_EDGE_LIST = "2 1\n1 2\n"


def run_cli(args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "selfconcord", *args],
        input=stdin,
        capture_output=True,
        text=True,
    )


@pytest.fixture
def k3_file(tmp_path):
    path = tmp_path / "k3.col"
    path.write_text(K3_DIMACS)
    return str(path)


@pytest.fixture
def footnote_file(tmp_path):
    path = tmp_path / "footnote.col"
    path.write_text(FOOTNOTE_DIMACS)
    return str(path)


def test_omega_and_alpha(k3_file, footnote_file):
    proc = run_cli(["omega", k3_file])
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"clique_number": 3, "witness": [1, 2, 3]}
    proc = run_cli(["alpha", footnote_file])
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["stability_number"] == 2


def test_stdin_edge_list():
    proc = run_cli(["omega", "-"], stdin=SINGLE_EDGE_LIST)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["clique_number"] == 2


def test_ms_check_passes(k3_file):
    proc = run_cli(["ms-check", k3_file])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert float(report["clique"]["gap"]) <= 1e-6
    assert float(report["clique"]["twice_max"]) == pytest.approx(2.0 / 3.0, abs=1e-9)


def test_ms_check_rejects_edgeless():
    proc = run_cli(["ms-check", "-"], stdin="p edge 3 0\n")
    assert proc.returncode == 3
    assert "error" in proc.stderr


def test_nesterov_check(footnote_file):
    proc = run_cli(["nesterov-check", footnote_file])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    # clique side: omega = 2; stability side: alpha = 2 through the complement
    assert float(report["clique"]["scaled_square"]) == pytest.approx(0.5, abs=1e-9)
    assert float(report["stability"]["scaled_square"]) == pytest.approx(0.5, abs=1e-9)


def test_footnote_demo_values():
    proc = run_cli(["footnote-demo"])
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    err = report["erroneous_identity"]
    assert float(err["lhs"]) == pytest.approx(0.7071067811865476, abs=1e-12)
    assert float(err["rhs"]) == pytest.approx(1.0, abs=1e-6)
    assert float(err["mismatch"]) >= 0.29
    assert float(report["corrected_identity"]["gap"]) <= 1e-9


def test_reduce_then_check_sc_roundtrip(k3_file, tmp_path):
    proc = run_cli(["reduce", k3_file, "--k", "3", "--sigma", "1/2"])
    assert proc.returncode == 0
    instance = json.loads(proc.stdout)
    assert instance["q"] == "1/27"
    assert instance["gamma_cubed"] == "1/54"
    path = tmp_path / "inst.json"
    path.write_text(proc.stdout)

    proc = run_cli(["check-sc", str(path), "--mode", "oracle"])
    assert proc.returncode == 1
    verdict = json.loads(proc.stdout)
    assert verdict["status"] == "NOT_SELF_CONCORDANT"
    assert verdict["certificate"]["kind"] == "witness"


def test_reduce_quartic(k3_file):
    proc = run_cli(["reduce", k3_file, "--k", "3", "--kind", "quartic", "--tau", "1"])
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["q"] == "1/4"


def test_check_sc_exit_codes(footnote_file, k3_file):
    # boundary instance: exactly at threshold, oracle says yes
    proc = run_cli(["check-sc", footnote_file, "--k", "3", "--sigma", "1/2", "--mode", "oracle"])
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "SELF_CONCORDANT"
    # numeric mode cannot resolve the boundary: undecided, exit 2
    proc = run_cli(["check-sc", footnote_file, "--k", "3", "--sigma", "1/2", "--mode", "grid"])
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["status"] == "UNDECIDED"
    # missing parameters on a graph input: error, exit 3
    proc = run_cli(["check-sc", k3_file])
    assert proc.returncode == 3


def test_check_sc2_on_graph_input(k3_file):
    proc = run_cli(["check-sc2", k3_file, "--k", "3", "--tau", "1", "--mode", "oracle"])
    assert proc.returncode == 1
    verdict = json.loads(proc.stdout)
    assert verdict["certificate"]["lhs"] == "3"
    assert verdict["certificate"]["rhs"] == "9/4"


def test_sigma_opt_tensor_text():
    tensor_text = "3 1\n1 1 1 1\n"
    proc = run_cli(["sigma-opt", "-"], stdin=tensor_text)
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert float(report["lower"]) == 0.25
    assert float(report["upper"]) == 0.25


def test_deterministic_byte_identical_output(k3_file):
    a = run_cli(["nesterov-check", k3_file, "--seed", "5"])
    b = run_cli(["nesterov-check", k3_file, "--seed", "5"])
    assert a.stdout == b.stdout
    assert a.returncode == b.returncode


def test_text_and_json_same_numbers(k3_file):
    js = json.loads(run_cli(["ms-check", k3_file]).stdout)
    txt = run_cli(["ms-check", k3_file, "--format", "text"]).stdout
    assert f"clique.twice_max: {js['clique']['twice_max']}" in txt
    assert f"stability.gap: {js['stability']['gap']}" in txt


def test_bad_arguments_exit_3():
    proc = run_cli(["reduce", "-", "--k", "3"], stdin=K3_DIMACS)
    assert proc.returncode == 3  # missing --sigma
    proc = run_cli(["no-such-command"])
    assert proc.returncode == 3


def test_verify_all_reduced_suite():
    proc = run_cli(["verify-all", "--max-n", "2", "--format", "text"])
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "9/9 criteria passed" in proc.stdout


def test_verify_all_tightened_tolerance_fails():
    proc = run_cli(["verify-all", "--max-n", "2", "--identity-tol", "1e-18", "--format", "text"])
    assert proc.returncode == 1
    assert "FAIL" in proc.stdout
