"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one `[acceptance] ... PASS` line (visible with -s or on
failure); the full randomized gate is the last criterion.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np

from ncentropy import Seed, cli, run_suite

LOG2 = math.log(2.0)


def _report(label, ok):
    print(f"[acceptance] {label}: {'PASS' if ok else 'FAIL'}")
    assert ok, label


def _run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_criterion_1_bell_conditional_entropy(tmp_path, capsys):
    code, out = _run_cli(capsys, "example", "bell", "--dir", str(tmp_path))
    assert code == 0
    files = json.loads(out)["files"]
    start = time.perf_counter()
    code, out = _run_cli(capsys, "change", files["morphism"], files["state"])
    elapsed = time.perf_counter() - start
    value = float(out)
    _report(
        "criterion 1 (Bell conditional entropy = -log 2 within 1e-9, < 0.1 s)",
        code == 0 and abs(value + 0.693147180559945) <= 1e-9 and elapsed < 0.1,
    )


def test_criterion_2_disintegration_criterion(tmp_path, capsys):
    code, out = _run_cli(capsys, "example", "remark-quartic", "--dir", str(tmp_path))
    files = json.loads(out)["files"]
    code, out = _run_cli(capsys, "disintegrate", files["morphism"], files["state"])
    nonexistence = code == 0 and json.loads(out)["exists"] is False

    code, out = _run_cli(capsys, "change", files["morphism"], files["state"])
    # independent oracle: the closed-form change of diag(p) through b -> 1 (x) b
    p = np.array([0.5, 0.25, 0.125, 0.125])
    marg = np.array([p[0] + p[2], p[1] + p[3], p[0] + p[2], p[1] + p[3]])
    closed_form = float(-(p * np.log(p / marg)).sum())
    change_ok = code == 0 and abs(float(out) - closed_form) <= 1e-6

    balanced = {
        "shape": [4],
        "weights": [1.0],
        "densities": [[[[0.4, 0], [0, 0], [0, 0], [0, 0]],
                       [[0, 0], [0.1, 0], [0, 0], [0, 0]],
                       [[0, 0], [0, 0], [0.4, 0], [0, 0]],
                       [[0, 0], [0, 0], [0, 0], [0.1, 0]]]],
    }
    state_path = tmp_path / "balanced.json"
    state_path.write_text(json.dumps(balanced))
    code, out = _run_cli(capsys, "disintegrate", files["morphism"], str(state_path))
    payload = json.loads(out)
    tau = np.array([[complex(re, im) for re, im in row] for row in payload["tau"]["0,0"]])
    code2, out2 = _run_cli(capsys, "change", files["morphism"], str(state_path))
    existence_ok = (
        code == 0
        and payload["exists"] is True
        and np.max(np.abs(tau - np.eye(2) / 2)) <= 1e-9
        and abs(payload["entropy_production"] - LOG2) <= 1e-8
        and abs(payload["entropy_production"] - float(out2)) <= 1e-8
    )
    _report(
        "criterion 2 (quartic nonexistence + closed-form change; balanced existence with tau = I/2)",
        nonexistence and change_ok and existence_ok,
    )


def test_criterion_3_orthogonal_affinity_iff():
    start = time.perf_counter()
    report = run_suite("orthogonal-affinity", 200, Seed(42), 1e-9)
    elapsed = time.perf_counter() - start
    _report(
        "criterion 3 (orthogonal affinity iff over 200 trials, < 10 s)",
        report.passed and elapsed < 10.0,
    )


def test_criterion_4_concavity_sandwich():
    start = time.perf_counter()
    report = run_suite("concavity", 500, Seed(42), 1e-9)
    elapsed = time.perf_counter() - start
    _report(
        "criterion 4 (concavity sandwich over 500 trials, < 10 s)",
        report.passed and elapsed < 10.0,
    )


def test_criterion_5_commutative_positivity_and_pure_vanishing():
    positivity = run_suite("commutative-positivity", 500, Seed(42), 1e-9)
    vanishing = run_suite("pure-vanishing", 200, Seed(42), 1e-9)
    _report(
        "criterion 5 (classical positivity x500; pure vanishing and nonnegativity x200)",
        positivity.passed and vanishing.passed,
    )


def test_criterion_6_negative_existence():
    report = run_suite("negative-existence", 50, Seed(42), 1e-9)
    _report("criterion 6 (measurement entropy change < -1e-6 on 50 instances)", report.passed)


def test_criterion_7_functoriality_and_coboundary():
    functoriality = run_suite("functoriality", 200, Seed(42), 1e-10)
    coboundary = run_suite("coboundary", 200, Seed(42), 1e-10)
    _report(
        "criterion 7 (composition additivity and coboundary residuals < 1e-10 x200)",
        functoriality.passed and coboundary.passed,
    )


def test_criterion_8_k_separation():
    affinity = run_suite("external-affinity", 100, Seed(42), 1e-10)
    counterexample = run_suite("k-counterexample", 100, Seed(42), 1e-9)
    _report(
        "criterion 8 (K externally affine within 1e-10 yet off by log 2 on the measurement pair)",
        affinity.passed and counterexample.passed,
    )


def test_criterion_9_characterization_fit():
    report = run_suite("characterization-fit", 500, Seed(42), 1e-9)
    _report(
        "criterion 9 (fitted constant 1 within 1e-9, residuals < 1e-9, 500 instances)",
        report.passed
        and report.fitted_constant is not None
        and abs(report.fitted_constant - 1.0) <= 1e-9
        and report.max_residual < 1e-9,
    )


def test_criterion_10_full_gate():
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "ncentropy.cli", "verify", "--suite", "all",
         "--trials", "200", "--seed", "42", "--tol", "1e-9"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    elapsed = time.perf_counter() - start
    payload = json.loads(proc.stdout)
    _report(
        f"criterion 10 (full gate exit 0 in {elapsed:.1f} s < 60 s)",
        proc.returncode == 0 and payload["pass"] is True and elapsed < 60.0,
    )
