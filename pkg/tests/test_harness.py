import json

import numpy as np
import pytest

from ncentropy import InstanceFamily, Seed, are_orthogonal, generate_instance, run_all, run_suite
from ncentropy.errors import UnknownSuite
from ncentropy.harness import SUITES


def test_generator_is_deterministic():
    f1, w1 = generate_instance(InstanceFamily(), Seed(7, 3))
    f2, w2 = generate_instance(InstanceFamily(), Seed(7, 3))
    assert np.array_equal(f1.multiplicities, f2.multiplicities)
    assert all(np.array_equal(a, b) for a, b in zip(f1.unitaries, f2.unitaries))
    assert np.array_equal(w1.weights, w2.weights)
    f3, _ = generate_instance(InstanceFamily(), Seed(7, 4))
    assert (
        f3.domain != f1.domain
        or f3.codomain != f1.codomain
        or not np.array_equal(f3.multiplicities, f1.multiplicities)
        or not all(np.array_equal(a, b) for a, b in zip(f3.unitaries, f1.unitaries))
    )


def test_generator_respects_family():
    for k in range(20):
        f, omega = generate_instance(InstanceFamily(classical_only=True), Seed(11, k))
        assert f.domain.is_commutative() and f.codomain.is_commutative()
        assert all(int(f.multiplicities[x].sum()) == 1 for x in range(len(f.codomain)))

        g, _ = generate_instance(InstanceFamily(max_blocks=2, max_block_dim=3), Seed(12, k))
        assert len(g.codomain) <= 2 and max(g.codomain.blocks) <= 3
        assert len(g.domain) <= 2 and max(g.domain.blocks) <= 3


def test_generator_orthogonal_pairs():
    for k in range(20):
        f, omega, xi = generate_instance(InstanceFamily(orthogonal_pair=True), Seed(13, k))
        assert are_orthogonal(omega, xi)


def test_constraint_rows_solve_dimensions():
    for k in range(30):
        f, _ = generate_instance(InstanceFamily(), Seed(14, k))
        n = np.asarray(f.domain.blocks)
        for x, m in enumerate(f.codomain.blocks):
            assert int(f.multiplicities[x] @ n) == m


@pytest.mark.parametrize("name", sorted(SUITES))
def test_each_suite_passes(name):
    report = run_suite(name, 25, Seed(42), 1e-9)
    assert report.passed, report.failures[:3]
    assert report.trials == 25
    assert report.suite == name


def test_reports_are_byte_identical():
    a = json.dumps(run_suite("disintegration", 30, Seed(5), 1e-9).to_json(), sort_keys=True)
    b = json.dumps(run_suite("disintegration", 30, Seed(5), 1e-9).to_json(), sort_keys=True)
    assert a == b


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("no-such-suite", 1, Seed(0))


def test_run_all_covers_the_roster():
    reports = run_all(5, Seed(3), 1e-9)
    assert [r.suite for r in reports] == list(SUITES)
    assert all(r.passed for r in reports)


def test_characterization_fit_reports_constant():
    report = run_suite("characterization-fit", 40, Seed(2), 1e-9)
    assert report.fitted_constant is not None
    assert abs(report.fitted_constant - 1.0) < 1e-9
