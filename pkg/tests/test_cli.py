import json
import math

import numpy as np

from ncentropy import cli
from ncentropy.morphism import extensionally_equal, morphism_from_json
from ncentropy.state import state_from_json


LOG2 = math.log(2.0)


def _run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _write_bell(tmp_path, capsys):
    code, out, _ = _run(capsys, "example", "bell", "--dir", str(tmp_path))
    assert code == 0
    bundle = json.loads(out)
    return bundle["files"]["morphism"], bundle["files"]["state"]


def test_example_bell_then_change(tmp_path, capsys):
    morphism, state = _write_bell(tmp_path, capsys)
    code, out, _ = _run(capsys, "change", morphism, state)
    assert code == 0
    assert abs(float(out) + LOG2) < 1e-9


def test_change_in_bits(tmp_path, capsys):
    morphism, state = _write_bell(tmp_path, capsys)
    code, out, _ = _run(capsys, "change", morphism, state, "--bits")
    assert code == 0
    assert abs(float(out) + 1.0) < 1e-9


def test_entropy_and_support(tmp_path, capsys):
    _, state = _write_bell(tmp_path, capsys)
    code, out, _ = _run(capsys, "entropy", state)
    assert code == 0
    assert abs(float(out)) < 1e-9
    code, out, _ = _run(capsys, "support", state)
    assert code == 0
    payload = json.loads(out)
    assert payload["shape"] == [4]


def test_pullback_round_trips(tmp_path, capsys):
    morphism, state = _write_bell(tmp_path, capsys)
    code, out, _ = _run(capsys, "pullback", morphism, state)
    assert code == 0
    pulled = state_from_json(json.loads(out))
    assert np.allclose(pulled.densities[0], np.eye(2) / 2)


def test_morphism_json_round_trip(tmp_path, capsys):
    code, out, _ = _run(capsys, "example", "plus-measurement", "--dir", str(tmp_path))
    assert code == 0
    bundle = json.loads(out)
    f = morphism_from_json(bundle["morphism"])
    again = morphism_from_json(json.loads(json.dumps(bundle["morphism"])))
    assert extensionally_equal(f, again, tol=1e-12)


def test_plus_measurement_change(tmp_path, capsys):
    code, out, _ = _run(capsys, "example", "plus-measurement", "--dir", str(tmp_path))
    bundle = json.loads(out)
    code, out, _ = _run(capsys, "change", bundle["files"]["morphism"], bundle["files"]["state"])
    assert code == 0
    assert abs(float(out) + LOG2) < 1e-9


def test_orthogonal_command(tmp_path, capsys):
    _, state = _write_bell(tmp_path, capsys)
    code, out, _ = _run(capsys, "orthogonal", state, state)
    assert code == 0
    assert json.loads(out) is False


def test_holevo_command(tmp_path, capsys):
    shape = {"shape": [2]}
    morphism = {"domain": [1], "codomain": [2], "multiplicities": [[2]], "unitaries": None}
    e0 = {**shape, "weights": [1.0], "densities": [[[[1, 0], [0, 0]], [[0, 0], [0, 0]]]]}
    e1 = {**shape, "weights": [1.0], "densities": [[[[0, 0], [0, 0]], [[0, 0], [1, 0]]]]}
    paths = {}
    for name, payload in [("m", morphism), ("a", e0), ("b", e1)]:
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(payload))
        paths[name] = str(p)
    code, out, _ = _run(capsys, "holevo", paths["m"], paths["a"], paths["b"], "--lambda", "0.5")
    assert code == 0
    assert abs(float(out) - LOG2) < 1e-9


def test_disintegrate_quartic(tmp_path, capsys):
    code, out, _ = _run(capsys, "example", "remark-quartic", "--dir", str(tmp_path))
    bundle = json.loads(out)
    code, out, _ = _run(capsys, "disintegrate", bundle["files"]["morphism"], bundle["files"]["state"])
    assert code == 0
    payload = json.loads(out)
    assert payload["exists"] is False
    assert payload["tau"] is None
    assert payload["violations"]


def test_disintegrate_classical(tmp_path, capsys):
    morphism = {
        "domain": [1, 1],
        "codomain": [1, 1, 1],
        "multiplicities": [[1, 0], [0, 1], [0, 1]],
        "unitaries": None,
    }
    state = {
        "shape": [1, 1, 1],
        "weights": [0.5, 0.25, 0.25],
        "densities": [[[[1, 0]]], [[[1, 0]]], [[[1, 0]]]],
    }
    mp, sp = tmp_path / "m.json", tmp_path / "s.json"
    mp.write_text(json.dumps(morphism))
    sp.write_text(json.dumps(state))
    code, out, _ = _run(capsys, "disintegrate", str(mp), str(sp), "--classical")
    assert code == 0
    payload = json.loads(out)
    assert payload["exists"] is True
    assert np.allclose(payload["psi"], [[1.0, 0.0, 0.0], [0.0, 0.5, 0.5]])
    assert abs(payload["entropy_production"] - 0.5 * LOG2) < 1e-9


def test_malformed_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"shape": [2], "weights"')
    code, _, err = _run(capsys, "entropy", str(bad))
    assert code == 2
    assert "bad.json:1:" in err


def test_invariant_violation_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "shape": [2],
        "weights": [0.9],
        "densities": [[[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]],
    }))
    code, _, err = _run(capsys, "entropy", str(bad))
    assert code == 2
    assert "NotProbabilityVector" in err


def test_missing_file_exits_2(tmp_path, capsys):
    code, _, err = _run(capsys, "entropy", str(tmp_path / "nope.json"))
    assert code == 2
    assert "cannot read" in err


def test_verify_single_suite(capsys):
    code, out, err = _run(capsys, "verify", "--suite", "coboundary", "--trials", "20", "--seed", "7")
    assert code == 0
    payload = json.loads(out)
    assert payload["pass"] is True
    assert payload["suites"][0]["suite"] == "coboundary"
    assert "[pass]" in err


def test_verify_unknown_suite_exits_2(capsys):
    code, _, err = _run(capsys, "verify", "--suite", "bogus", "--trials", "1")
    assert code == 2
    assert "unknown suite" in err


def test_verify_seed_env_default(capsys, monkeypatch):
    monkeypatch.setenv("NCE_SEED", "123")
    parser = cli.build_parser()
    args = parser.parse_args(["verify"])
    assert args.seed == 123
