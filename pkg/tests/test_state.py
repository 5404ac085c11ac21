import numpy as np
import pytest

from ncentropy import (
    AlgebraElement,
    AlgebraShape,
    Seed,
    State,
    are_orthogonal,
    block_pure_state,
    classical_state,
    convex_combine,
    evaluate,
    external_sum_state,
    identity,
    is_projection,
    is_pure,
    segal,
    support,
)
from ncentropy.algebra import multiply
from ncentropy.errors import NotDensity, NotProbabilityVector, OutOfRange, ShapeMismatch
from ncentropy.linalg import max_abs, sample_density, sample_simplex
from ncentropy.state import support_rank


def _random_state(shape, seed):
    weights = sample_simplex(len(shape), Seed(seed, 0))
    densities = tuple(sample_density(m, Seed(seed, 1 + x)) for x, m in enumerate(shape.blocks))
    return State(shape, weights, densities)


def _random_element(shape, seed):
    blocks = []
    for x, m in enumerate(shape.blocks):
        rng = Seed(seed, 50 + x).rng()
        blocks.append(rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m)))
    return AlgebraElement(shape, tuple(blocks))


BELL = np.zeros((4, 4), dtype=complex)
for _i in (0, 3):
    for _j in (0, 3):
        BELL[_i, _j] = 0.5

PLUS = np.full((2, 2), 0.5, dtype=complex)


def test_state_validation():
    shape = AlgebraShape((2,))
    with pytest.raises(NotProbabilityVector):
        State(shape, [0.9], (PLUS,))
    with pytest.raises(NotDensity):
        State(shape, [1.0], (np.diag([0.9, 0.3]),))
    with pytest.raises(ShapeMismatch):
        State(shape, [1.0], (np.eye(3) / 3,))


def test_evaluate_examples():
    half_tr = State(AlgebraShape((2,)), [1.0], (np.eye(2) / 2,))
    a = AlgebraElement(AlgebraShape((2,)), (np.diag([1.0, 3.0]),))
    assert abs(evaluate(half_tr, a) - 2.0) < 1e-12

    two_point = classical_state([0.25, 0.75])
    b = AlgebraElement(two_point.shape, (np.array([[2.0]]), np.array([[4.0]])))
    assert abs(evaluate(two_point, b) - 3.5) < 1e-12


def test_evaluate_unitality_and_linearity():
    shape = AlgebraShape((2, 3))
    omega = _random_state(shape, 0)
    assert abs(evaluate(omega, identity(shape)) - 1.0) < 1e-10
    a, b = _random_element(shape, 1), _random_element(shape, 2)
    summed = AlgebraElement(shape, tuple(x + 2.0j * y for x, y in zip(a.blocks, b.blocks)))
    assert abs(evaluate(omega, summed) - evaluate(omega, a) - 2.0j * evaluate(omega, b)) < 1e-10


def test_support_examples():
    omega = State(AlgebraShape((3,)), [1.0], (np.diag([0.5, 0.5, 0.0]),))
    assert np.allclose(support(omega).blocks[0], np.diag([1.0, 1.0, 0.0]), atol=1e-12)

    plus = State(AlgebraShape((2,)), [1.0], (PLUS,))
    assert max_abs(support(plus).blocks[0] - PLUS) < 1e-12

    dirac = classical_state([1.0, 0.0])
    assert np.allclose(support(dirac).blocks[0], [[1.0]])
    assert np.allclose(support(dirac).blocks[1], [[0.0]])


def test_support_is_projection_and_absorbs():
    for k in range(100):
        shape = AlgebraShape((2, 3))
        omega = _random_state(shape, 100 + k)
        p = support(omega)
        assert is_projection(p, 1e-9)
        a = _random_element(shape, 100 + k)
        sandwiched = multiply(multiply(p, a), p)
        assert abs(evaluate(omega, sandwiched) - evaluate(omega, a)) < 1e-9


def test_support_minimality():
    # rank equals the number of nonzero eigenvalues, and any strictly
    # smaller spectral projection loses absorption
    rho = np.diag([0.6, 0.4, 0.0])
    omega = State(AlgebraShape((3,)), [1.0], (rho,))
    assert support_rank(omega) == 2
    smaller = AlgebraElement(omega.shape, (np.diag([1.0, 0.0, 0.0]).astype(complex),))
    probe = identity(omega.shape)
    assert abs(evaluate(omega, multiply(smaller, probe)) - evaluate(omega, probe)) > 0.1


def test_orthogonality_examples():
    d1 = classical_state([1.0, 0.0])
    d2 = classical_state([0.0, 1.0])
    assert are_orthogonal(d1, d2)
    assert not are_orthogonal(d1, d1)

    plus = State(AlgebraShape((2,)), [1.0], (PLUS,))
    e0 = State(AlgebraShape((2,)), [1.0], (np.diag([1.0, 0.0]),))
    # oracle: the product of the two rank-1 projectors is nonzero
    assert max_abs(support(plus).blocks[0] @ support(e0).blocks[0]) > 0.1
    assert not are_orthogonal(plus, e0)


def test_orthogonality_symmetric_and_null_mass():
    shape = AlgebraShape((2, 2))
    base = np.zeros((2, 2), dtype=complex)
    base[0, 0] = 1.0
    comp = np.zeros((2, 2), dtype=complex)
    comp[1, 1] = 1.0
    omega = State(shape, [1.0, 0.0], (base, np.eye(2) / 2))
    xi = State(shape, [0.5, 0.5], (comp, np.eye(2) / 2))
    assert are_orthogonal(omega, xi) == are_orthogonal(xi, omega)
    assert abs(evaluate(omega, support(xi))) < 1e-10


def test_convex_combine_endpoints_and_symmetry():
    shape = AlgebraShape((2,))
    omega = State(shape, [1.0], (np.diag([1.0, 0.0]),))
    xi = State(shape, [1.0], (np.diag([0.0, 1.0]),))
    same = convex_combine(1.0, omega, xi)
    a = _random_element(shape, 7)
    assert abs(evaluate(same, a) - evaluate(omega, a)) < 1e-12
    mixed = convex_combine(0.5, omega, xi)
    assert max_abs(mixed.densities[0] - np.eye(2) / 2) < 1e-12
    with pytest.raises(OutOfRange):
        convex_combine(1.5, omega, xi)


def test_convex_combine_is_affine_on_evaluation():
    shape = AlgebraShape((1, 3))
    omega = _random_state(shape, 8)
    xi = _random_state(shape, 9)
    a = _random_element(shape, 10)
    for lam in (0.0, 0.3, 0.77, 1.0):
        mixed = convex_combine(lam, omega, xi)
        expected = lam * evaluate(omega, a) + (1.0 - lam) * evaluate(xi, a)
        assert abs(evaluate(mixed, a) - expected) < 1e-10


def test_purity():
    assert is_pure(classical_state([0.0, 1.0, 0.0]))
    assert not is_pure(State(AlgebraShape((2,)), [1.0], (np.eye(2) / 2,)))
    bell = State(AlgebraShape((4,)), [1.0], (BELL,))
    assert is_pure(bell)


def test_purity_iff_zero_entropy():
    for k in range(20):
        shape = AlgebraShape((2, 3))
        omega = _random_state(shape, 200 + k)
        assert not is_pure(omega)
        assert segal(omega) > 1e-9
    pure = block_pure_state(AlgebraShape((2, 3)), 1, [1.0, 1.0j, 0.0])
    assert is_pure(pure)
    assert abs(segal(pure)) < 1e-9


def test_external_sum():
    unique = classical_state([1.0])
    pair = external_sum_state(0.5, unique, unique)
    assert np.allclose(pair.weights, [0.5, 0.5])
    for k in range(10):
        omega = _random_state(AlgebraShape((2,)), 300 + k)
        xi = _random_state(AlgebraShape((1, 2)), 400 + k)
        lam = 0.3
        combined = external_sum_state(lam, omega, xi)
        assert abs(combined.weights.sum() - 1.0) < 1e-12
        tilde_omega = external_sum_state(1.0, omega, xi)
        tilde_xi = external_sum_state(0.0, omega, xi)
        assert are_orthogonal(tilde_omega, tilde_xi)
