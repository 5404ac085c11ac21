"""Command-line interface over JSON files.

Machine-readable output goes to stdout, diagnostics to stderr.  Exit
codes: 0 on success (and passing suites), 1 on suite failure, 2 on
malformed input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import disintegration as dis
from . import entropy as ent
from . import harness
from . import morphism as mor
from . import state as st
from .algebra import AlgebraShape, element_to_json
from .errors import InvariantViolation
from .harness import factor_inclusion
from .linalg import Seed, matrix_to_json
from .state import State


def _fmt(value: float, bits: bool) -> str:
    if bits:
        value = value / ent.LOG2
    if value == 0.0:
        value = 0.0  # avoid printing negative zero
    return f"{value:.12g}"


class _InputError(Exception):
    """Bad input file or value; reported on stderr with exit code 2."""


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _load_state(path: str) -> State:
    return st.state_from_json(_load_json(path))


def _load_morphism(path: str) -> mor.Morphism:
    return mor.morphism_from_json(_load_json(path))


def _cmd_entropy(args) -> int:
    omega = _load_state(args.state)
    print(_fmt(ent.segal(omega), args.bits))
    return 0


def _cmd_pullback(args) -> int:
    f = _load_morphism(args.morphism)
    omega = _load_state(args.state)
    print(json.dumps(st.state_to_json(mor.pullback(f, omega))))
    return 0


def _cmd_change(args) -> int:
    f = _load_morphism(args.morphism)
    omega = _load_state(args.state)
    print(_fmt(ent.entropy_change(f, omega), args.bits))
    return 0


def _cmd_holevo(args) -> int:
    f = _load_morphism(args.morphism)
    omega = _load_state(args.state_a)
    xi = _load_state(args.state_b)
    print(_fmt(ent.holevo_change(f, args.lam, omega, xi), args.bits))
    return 0


def _cmd_support(args) -> int:
    omega = _load_state(args.state)
    print(json.dumps(element_to_json(st.support(omega))))
    return 0


def _cmd_orthogonal(args) -> int:
    a = _load_state(args.state_a)
    b = _load_state(args.state_b)
    print(json.dumps(st.are_orthogonal(a, b)))
    return 0


def _classical_function(f: mor.Morphism) -> list[int]:
    if not (f.domain.is_commutative() and f.codomain.is_commutative()):
        raise InvariantViolation("--classical requires a morphism between commutative algebras")
    return [int(np.nonzero(f.multiplicities[x])[0][0]) for x in range(len(f.codomain))]


def _cmd_disintegrate(args) -> int:
    f = _load_morphism(args.morphism)
    omega = _load_state(args.state)
    scale = 1.0 / ent.LOG2 if args.bits else 1.0
    if args.classical:
        phi = _classical_function(f)
        psi = dis.classical_disintegrate(phi, omega.weights, n_targets=len(f.domain))
        production = ent.entropy_change(f, omega)
        payload = {
            "exists": True,
            "psi": [[float(v) for v in row] for row in psi.matrix],
            "entropy_production": production * scale,
        }
        print(json.dumps(payload))
        return 0
    result = dis.quantum_disintegrate(f, omega)
    if isinstance(result, dis.NoDisintegration):
        payload = {
            "exists": False,
            "tau": None,
            "violations": [result.violation],
            "entropy_production": None,
        }
    else:
        payload = {
            "exists": True,
            "tau": {f"{y},{x}": matrix_to_json(t) for (y, x), t in sorted(result.tau.items())},
            "violations": [],
            "entropy_production": dis.disintegration_entropy(f, omega, result) * scale,
        }
    print(json.dumps(payload))
    return 0


def _worked_examples() -> dict:
    bell = np.zeros((4, 4), dtype=np.complex128)
    for i in (0, 3):
        for j in (0, 3):
            bell[i, j] = 0.5
    quartic = np.diag([0.5, 0.25, 0.125, 0.125]).astype(np.complex128)
    plus = np.full((2, 2), 0.5, dtype=np.complex128)
    z_obs = np.diag([1.0, -1.0]).astype(np.complex128)
    return {
        "bell": (
            factor_inclusion(2, 2),
            State(AlgebraShape((4,)), np.ones(1), (bell,)),
        ),
        "plus-measurement": (
            mor.measurement_morphism(AlgebraShape((2,)), 0, z_obs),
            State(AlgebraShape((2,)), np.ones(1), (plus,)),
        ),
        "remark-quartic": (
            factor_inclusion(2, 2),
            State(AlgebraShape((4,)), np.ones(1), (quartic,)),
        ),
    }


def _cmd_example(args) -> int:
    examples = _worked_examples()
    f, omega = examples[args.name]
    out_dir = Path(args.dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    morphism_path = out_dir / f"{args.name}_morphism.json"
    state_path = out_dir / f"{args.name}_state.json"
    morphism_json = mor.morphism_to_json(f)
    state_json = st.state_to_json(omega)
    morphism_path.write_text(json.dumps(morphism_json, indent=2))
    state_path.write_text(json.dumps(state_json, indent=2))
    bundle = {
        "name": args.name,
        "files": {"morphism": str(morphism_path), "state": str(state_path)},
        "morphism": morphism_json,
        "state": state_json,
    }
    print(json.dumps(bundle))
    return 0


def _cmd_verify(args) -> int:
    seed = Seed(args.seed)
    if args.suite == "all":
        reports = harness.run_all(args.trials, seed, args.tol)
    else:
        reports = [harness.run_suite(args.suite, args.trials, seed, args.tol)]
    passed = all(r.passed for r in reports)
    payload = {
        "trials": args.trials,
        "seed": args.seed,
        "tol": args.tol,
        "pass": passed,
        "suites": [r.to_json() for r in reports],
    }
    print(json.dumps(payload))
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        print(f"[{status}] {r.suite}: max residual {r.max_residual:.3e}", file=sys.stderr)
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nce",
        description="Entropy computations and lemma-verification suites for finite quantum probability.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_bits(p):
        p.add_argument("--bits", action="store_true", help="report entropies in bits instead of nats")

    p = sub.add_parser("entropy", help="Segal entropy of a state")
    p.add_argument("state")
    add_bits(p)
    p.set_defaults(func=_cmd_entropy)

    p = sub.add_parser("pullback", help="pull a state back through a morphism")
    p.add_argument("morphism")
    p.add_argument("state")
    p.set_defaults(func=_cmd_pullback)

    p = sub.add_parser("change", help="entropy change of a state along a morphism")
    p.add_argument("morphism")
    p.add_argument("state")
    add_bits(p)
    p.set_defaults(func=_cmd_change)

    p = sub.add_parser("holevo", help="mixing deviation of the entropy change")
    p.add_argument("morphism")
    p.add_argument("state_a")
    p.add_argument("state_b")
    p.add_argument("--lambda", dest="lam", type=float, required=True, metavar="WEIGHT")
    add_bits(p)
    p.set_defaults(func=_cmd_holevo)

    p = sub.add_parser("support", help="support projection of a state")
    p.add_argument("state")
    p.set_defaults(func=_cmd_support)

    p = sub.add_parser("orthogonal", help="whether two states have orthogonal supports")
    p.add_argument("state_a")
    p.add_argument("state_b")
    p.set_defaults(func=_cmd_orthogonal)

    p = sub.add_parser("disintegrate", help="construct or refute a disintegration")
    p.add_argument("morphism")
    p.add_argument("state")
    p.add_argument("--classical", action="store_true", help="use the stochastic inverse of a map of finite sets")
    add_bits(p)
    p.set_defaults(func=_cmd_disintegrate)

    p = sub.add_parser("example", help="emit a worked instance as JSON files")
    p.add_argument("name", choices=["bell", "plus-measurement", "remark-quartic"])
    p.add_argument("--dir", default=".", help="directory for the emitted files")
    p.set_defaults(func=_cmd_example)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all", help="suite name or 'all'")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=int(os.environ.get("NCE_SEED", "42")))
    p.add_argument("--tol", type=float, default=1e-9)
    add_bits(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        return _usage_error(str(exc))
    except InvariantViolation as exc:
        return _usage_error(f"{type(exc).__name__}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
