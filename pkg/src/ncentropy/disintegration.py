"""Classical and quantum disintegrations and their entropy production.

A classical disintegration is a stochastic one-sided inverse of a
probability-preserving map of finite sets; it always exists.  The
quantum analogue asks each weighted codomain density, conjugated into
the canonical layout, to factor segment-by-segment as
``tau_{yx} (x) q_y sigma_y`` with PSD ``tau`` blocks normalized per
domain block; existence then forces a nonnegative entropy change, and
the change equals a weighted entropy of the assembled ``tau`` blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .entropy import von_neumann
from .errors import (
    InconsistentData,
    IndexOutOfRange,
    NotProbabilityVector,
    ShapeMismatch,
)
from .linalg import DEFAULT_TOL, max_abs, partial_trace_right
from .morphism import Morphism, _segments, pullback
from .state import State

FACTOR_TOL = 1e-8  # default tolerance for the factorization test, scaled per block


@dataclass(frozen=True)
class StochasticMap:
    """Row-stochastic matrix: one probability vector on the target per source point."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.ndim != 2 or m.size == 0:
            raise ShapeMismatch(f"expected a nonempty 2-d matrix, got shape {m.shape}")
        if np.min(m) < -DEFAULT_TOL:
            raise NotProbabilityVector(f"stochastic matrix has negative entry {np.min(m):.3e}")
        if max_abs(m.sum(axis=1) - 1.0) > DEFAULT_TOL:
            raise NotProbabilityVector("stochastic matrix rows must sum to 1")
        object.__setattr__(self, "matrix", np.clip(m, 0.0, None))

    @property
    def source_size(self) -> int:
        return self.matrix.shape[0]

    @property
    def target_size(self) -> int:
        return self.matrix.shape[1]


def classical_disintegrate(phi, p, n_targets: int | None = None) -> StochasticMap:
    """Stochastic inverse of a probability-preserving function.

    ``phi`` maps source index ``x`` to target index ``y``; the returned
    map sends ``y`` to the conditional distribution ``p_x / q_y`` on the
    fiber over ``y``.  Rows over targets of pushforward weight zero are
    fixed deterministically: uniform on the fiber when it is nonempty,
    uniform everywhere otherwise.
    """
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 1 or p.size == 0 or np.min(p) < -DEFAULT_TOL or abs(p.sum() - 1.0) > DEFAULT_TOL:
        raise NotProbabilityVector("p must be a probability vector")
    p = np.clip(p, 0.0, None)
    phi = [int(y) for y in phi]
    if len(phi) != p.size:
        raise ShapeMismatch(f"phi has {len(phi)} entries but p has {p.size}")
    n_y = (max(phi) + 1) if n_targets is None else int(n_targets)
    if any(y < 0 or y >= n_y for y in phi):
        raise IndexOutOfRange(f"phi takes values outside 0..{n_y - 1}")
    n_x = p.size
    q = np.zeros(n_y)
    for x, y in enumerate(phi):
        q[y] += p[x]
    psi = np.zeros((n_y, n_x))
    for y in range(n_y):
        fiber = [x for x in range(n_x) if phi[x] == y]
        if q[y] > 0.0:
            for x in fiber:
                psi[y, x] = p[x] / q[y]
            psi[y] /= psi[y].sum()
        elif fiber:
            psi[y, fiber] = 1.0 / len(fiber)
        else:
            psi[y, :] = 1.0 / n_x
    return StochasticMap(psi)


@dataclass(frozen=True)
class QuantumDisintegrationData:
    """Factorization witnesses: one PSD ``tau`` block per (domain, codomain) pair."""

    tau: dict = field(default_factory=dict)  # (y, x) -> ndarray of size c[x, y]
    pullback_weights: np.ndarray = None
    pullback_densities: tuple = ()


@dataclass(frozen=True)
class NoDisintegration:
    """First violated factorization check, with the offending residual."""

    violation: str
    residual: float


def quantum_disintegrate(f: Morphism, omega: State, tol: float = FACTOR_TOL):
    """Decide existence of a disintegration for ``(f, omega)`` constructively.

    Conjugates each weighted codomain density into the canonical layout
    and tests the block factorization against the pullback state.  The
    candidate ``tau`` blocks are read off by partial-tracing the domain
    factor, which is exact whenever a factorization exists, so verifying
    the reconstruction decides existence.  Returns the witness data on
    success and a ``NoDisintegration`` describing the first failed check
    otherwise.
    """
    if omega.shape != f.codomain:
        raise ShapeMismatch("state must live on the codomain of the morphism")
    pulled = pullback(f, omega)
    q, sigmas = pulled.weights, pulled.densities
    tau: dict = {}
    for x, (p, rho) in enumerate(zip(omega.weights, omega.densities)):
        weighted = p * rho
        m = f.unitaries[x].conj().T @ weighted @ f.unitaries[x]
        eff = tol * max_abs(weighted)
        segs = _segments(f, x)
        for i, (y, off, copies, n) in enumerate(segs):
            for (y2, off2, copies2, n2) in segs[i + 1 :]:
                block = m[off : off + copies * n, off2 : off2 + copies2 * n2]
                if max_abs(block) > eff:
                    return NoDisintegration(
                        f"off-diagonal coupling between domain blocks {y} and {y2} inside codomain block {x}",
                        max_abs(block),
                    )
        for y, off, copies, n in segs:
            seg = m[off : off + copies * n, off : off + copies * n]
            if q[y] <= DEFAULT_TOL:
                if max_abs(seg) > eff:
                    return NoDisintegration(
                        f"codomain block {x} charges domain block {y} of pullback weight zero",
                        max_abs(seg),
                    )
                continue
            cand = partial_trace_right(seg, copies, n) / q[y]
            cand = (cand + cand.conj().T) / 2
            if np.linalg.eigvalsh(cand)[0] < -tol:
                return NoDisintegration(
                    f"candidate factor for domain block {y} in codomain block {x} is not PSD",
                    float(-np.linalg.eigvalsh(cand)[0]),
                )
            residual = max_abs(seg - np.kron(cand, q[y] * sigmas[y]))
            if residual > eff:
                return NoDisintegration(
                    f"segment for domain block {y} in codomain block {x} does not factor through the pullback density",
                    residual,
                )
            tau[(y, x)] = cand
    for y in range(len(f.domain)):
        if q[y] > DEFAULT_TOL:
            total = sum(np.trace(tau[(y, x)]).real for x in range(len(f.codomain)) if (y, x) in tau)
            if abs(total - 1.0) > tol * len(f.codomain.blocks):
                return NoDisintegration(
                    f"factors for domain block {y} have total trace {total:.12g} instead of 1",
                    abs(total - 1.0),
                )
    return QuantumDisintegrationData(tau, q.copy(), sigmas)


def _verify_witness(f: Morphism, omega: State, data: QuantumDisintegrationData, tol: float) -> None:
    q, sigmas = data.pullback_weights, data.pullback_densities
    for x, (p, rho) in enumerate(zip(omega.weights, omega.densities)):
        weighted = p * rho
        m = f.unitaries[x].conj().T @ weighted @ f.unitaries[x]
        rebuilt = np.zeros_like(m)
        for y, off, copies, n in _segments(f, x):
            if (y, x) in data.tau:
                rebuilt[off : off + copies * n, off : off + copies * n] = np.kron(
                    data.tau[(y, x)], q[y] * sigmas[y]
                )
        if max_abs(m - rebuilt) > tol * max(1.0, max_abs(weighted)):
            raise InconsistentData(
                f"witness does not reproduce codomain block {x} (residual {max_abs(m - rebuilt):.3e})"
            )


def disintegration_entropy(
    f: Morphism, omega: State, data: QuantumDisintegrationData, tol: float = FACTOR_TOL
) -> float:
    """Entropy production of a disintegration witness.

    Equals the entropy change of ``(f, omega)`` and is nonnegative: each
    domain block of positive pullback weight contributes its weight times
    the entropy of the block-diagonal assembly of its ``tau`` factors.
    """
    _verify_witness(f, omega, data, tol)
    q = data.pullback_weights
    total = 0.0
    for y in range(len(f.domain)):
        if q[y] <= DEFAULT_TOL:
            continue
        parts = [data.tau[(y, x)] for x in range(len(f.codomain)) if (y, x) in data.tau]
        dim = sum(t.shape[0] for t in parts)
        assembled = np.zeros((dim, dim), dtype=np.complex128)
        offset = 0
        for t in parts:
            assembled[offset : offset + t.shape[0], offset : offset + t.shape[0]] = t
            offset += t.shape[0]
        total += q[y] * von_neumann(assembled, tol)
    return total
