"""States on block algebras: supports, orthogonality, mixing, purity.

A state is a probability weight per block together with a density
matrix per block; it acts on an element by ``sum_x p_x tr(rho_x a_x)``.
Blocks of weight zero carry a placeholder density (maximally mixed by
convention) that no operation ever reads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import AlgebraElement, AlgebraShape, direct_sum_shape
from .errors import NotDensity, NotProbabilityVector, OutOfRange, ShapeMismatch
from .linalg import DEFAULT_TOL, as_matrix, max_abs

# A SupportProjection is an AlgebraElement satisfying is_projection,
# with the zero matrix on weight-zero blocks.
SupportProjection = AlgebraElement


def _check_density(rho: np.ndarray, tol: float):
    if rho.shape[0] != rho.shape[1]:
        raise NotDensity(f"density must be square, got {rho.shape}")
    if max_abs(rho - rho.conj().T) > tol:
        raise NotDensity(f"density deviates from Hermitian by {max_abs(rho - rho.conj().T):.3e}")
    vals = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    if vals[0] < -tol:
        raise NotDensity(f"density has eigenvalue {vals[0]:.3e} < -{tol:.3e}")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise NotDensity(f"density trace {np.trace(rho).real:.12g} != 1 within {tol:.3e}")


@dataclass(frozen=True, eq=False)
class State:
    """Block weights plus one density matrix per block."""

    shape: AlgebraShape
    weights: np.ndarray
    densities: tuple[np.ndarray, ...]

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.shape != (len(self.shape),):
            raise ShapeMismatch(f"expected {len(self.shape)} weights, got shape {w.shape}")
        if np.min(w) < -DEFAULT_TOL:
            raise NotProbabilityVector(f"weight {np.min(w):.3e} is negative")
        if abs(w.sum() - 1.0) > DEFAULT_TOL:
            raise NotProbabilityVector(f"weights sum to {w.sum():.12g}, not 1 within {DEFAULT_TOL:.3e}")
        w = np.clip(w, 0.0, None)
        mats = tuple(as_matrix(r) for r in self.densities)
        if len(mats) != len(self.shape):
            raise ShapeMismatch(f"expected {len(self.shape)} densities, got {len(mats)}")
        for m, rho in zip(self.shape.blocks, mats):
            if rho.shape != (m, m):
                raise ShapeMismatch(f"density of shape {rho.shape} does not match block dimension {m}")
            _check_density(rho, DEFAULT_TOL)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "densities", mats)


def maximally_mixed_density(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128) / n


def make_state(shape: AlgebraShape, weights, densities) -> State:
    return State(shape, weights, tuple(densities))


def classical_state(p) -> State:
    """State on the commutative algebra with one 1-dim block per outcome."""
    p = np.asarray(p, dtype=np.float64)
    shape = AlgebraShape((1,) * len(p))
    ones = tuple(np.ones((1, 1), dtype=np.complex128) for _ in p)
    return State(shape, p, ones)


def block_pure_state(shape: AlgebraShape, block: int, vector) -> State:
    """Dirac weight on ``block`` with the rank-1 density of ``vector``."""
    v = np.asarray(vector, dtype=np.complex128).reshape(-1)
    if v.shape[0] != shape.blocks[block]:
        raise ShapeMismatch(f"vector of length {v.shape[0]} does not fit block of dimension {shape.blocks[block]}")
    v = v / np.linalg.norm(v)
    weights = np.zeros(len(shape))
    weights[block] = 1.0
    densities = [maximally_mixed_density(m) for m in shape.blocks]
    densities[block] = np.outer(v, v.conj())
    return State(shape, weights, tuple(densities))


def evaluate(omega: State, a: AlgebraElement) -> complex:
    """Expectation ``sum_x p_x tr(rho_x a_x)``."""
    if omega.shape != a.shape:
        raise ShapeMismatch(f"state on {omega.shape.blocks} applied to element on {a.shape.blocks}")
    total = 0.0 + 0.0j
    for p, rho, blk in zip(omega.weights, omega.densities, a.blocks):
        if p > 0.0:
            total += p * np.trace(rho @ blk)
    return complex(total)


def support(omega: State, tol: float = DEFAULT_TOL) -> SupportProjection:
    """Smallest projection absorbing the state.

    Block ``x`` is the spectral projection of ``rho_x`` onto eigenvalues
    above ``tol`` when ``p_x > tol``, and zero otherwise.
    """
    blocks = []
    for p, rho, m in zip(omega.weights, omega.densities, omega.shape.blocks):
        if p > tol:
            vals, vecs = linalg.eigh(rho, tol)
            cols = vecs[:, vals > tol]
            blocks.append(cols @ cols.conj().T)
        else:
            blocks.append(np.zeros((m, m), dtype=np.complex128))
    return AlgebraElement(omega.shape, tuple(blocks))


def support_rank(omega: State, tol: float = DEFAULT_TOL) -> int:
    rank = 0
    for p, rho in zip(omega.weights, omega.densities):
        if p > tol:
            rank += int(np.sum(np.linalg.eigvalsh(rho) > tol))
    return rank


def are_orthogonal(omega: State, xi: State, tol: float = DEFAULT_TOL) -> bool:
    """True iff the support projections multiply to zero blockwise."""
    if omega.shape != xi.shape:
        raise ShapeMismatch("orthogonality requires states on the same algebra")
    p_omega = support(omega, tol)
    p_xi = support(xi, tol)
    return all(max_abs(a @ b) <= tol for a, b in zip(p_omega.blocks, p_xi.blocks))


def convex_combine(lam: float, omega: State, xi: State) -> State:
    """Mixture ``lam*omega + (1-lam)*xi`` on a common algebra."""
    if not 0.0 <= lam <= 1.0:
        raise OutOfRange(f"mixing weight {lam!r} outside [0, 1]")
    if omega.shape != xi.shape:
        raise ShapeMismatch("mixing requires states on the same algebra")
    weights = lam * omega.weights + (1.0 - lam) * xi.weights
    densities = []
    for w, p, rho, q, sig, m in zip(
        weights, omega.weights, omega.densities, xi.weights, xi.densities, omega.shape.blocks
    ):
        if w > 0.0:
            mix = (lam * p * rho + (1.0 - lam) * q * sig) / w
            densities.append((mix + mix.conj().T) / 2)
        else:
            densities.append(maximally_mixed_density(m))
    return State(omega.shape, weights / weights.sum(), tuple(densities))


def is_pure(omega: State, tol: float = DEFAULT_TOL) -> bool:
    """True iff the total support has rank one."""
    return support_rank(omega, tol) == 1


def external_sum_state(lam: float, omega: State, xi: State) -> State:
    """State on the direct sum weighting ``omega`` by ``lam`` and ``xi`` by ``1-lam``."""
    if not 0.0 <= lam <= 1.0:
        raise OutOfRange(f"mixing weight {lam!r} outside [0, 1]")
    shape = direct_sum_shape(omega.shape, xi.shape)
    weights = np.concatenate([lam * omega.weights, (1.0 - lam) * xi.weights])
    return State(shape, weights, omega.densities + xi.densities)


def state_to_json(omega: State) -> dict:
    return {
        "shape": list(omega.shape.blocks),
        "weights": [float(p) for p in omega.weights],
        "densities": [linalg.matrix_to_json(r) for r in omega.densities],
    }


def state_from_json(data) -> State:
    try:
        shape = AlgebraShape(tuple(data["shape"]))
        weights = np.asarray(data["weights"], dtype=np.float64)
        densities = tuple(linalg.matrix_from_json(r) for r in data["densities"])
    except (KeyError, TypeError) as exc:
        raise ShapeMismatch(f"malformed state encoding: missing or bad field {exc}") from exc
    return State(shape, weights, densities)
