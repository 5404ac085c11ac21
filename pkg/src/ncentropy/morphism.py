"""Unital *-homomorphisms between block algebras in canonical form.

A morphism from ``B = ⊕_y M_{n_y}`` to ``A = ⊕_x M_{m_x}`` is stored as a
nonnegative-integer multiplicity matrix ``c`` with ``m_x = sum_y c[x,y] n_y``
plus one unitary per codomain block.  Applied to an element ``b``, codomain
block ``x`` is::

    U_x @ blockdiag_y( kron(eye(c[x,y]), b_y) ) @ U_x^dag

with the segments laid out in ascending ``y`` order and copies contiguous.
States pull back through the Hilbert-Schmidt adjoint, i.e. by partial
tracing the multiplicity index of each diagonal segment.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import AlgebraElement, AlgebraShape, direct_sum_shape
from .errors import (
    DegenerateSpectrum,
    NotHermitian,
    NotOrthogonalInput,
    NotUnitary,
    ShapeMismatch,
)
from .linalg import DEFAULT_TOL, as_matrix, max_abs
from .state import State, are_orthogonal, maximally_mixed_density


@dataclass(frozen=True, eq=False)
class Morphism:
    domain: AlgebraShape
    codomain: AlgebraShape
    multiplicities: np.ndarray
    unitaries: tuple[np.ndarray, ...]

    def __post_init__(self):
        c = np.asarray(self.multiplicities)
        if c.shape != (len(self.codomain), len(self.domain)):
            raise ShapeMismatch(
                f"multiplicity matrix of shape {c.shape} does not match "
                f"{len(self.codomain)} codomain x {len(self.domain)} domain blocks"
            )
        if np.any(c != np.floor(c)) or np.any(c < 0):
            raise ShapeMismatch("multiplicities must be nonnegative integers")
        c = c.astype(np.int64)
        n = np.asarray(self.domain.blocks, dtype=np.int64)
        for x, m in enumerate(self.codomain.blocks):
            if int(c[x] @ n) != m:
                raise ShapeMismatch(
                    f"codomain block {x} has dimension {m} but multiplicities give {int(c[x] @ n)}"
                )
        mats = tuple(as_matrix(u) for u in self.unitaries)
        if len(mats) != len(self.codomain):
            raise ShapeMismatch(f"expected {len(self.codomain)} unitaries, got {len(mats)}")
        for m, u in zip(self.codomain.blocks, mats):
            if u.shape != (m, m):
                raise ShapeMismatch(f"unitary of shape {u.shape} does not match block dimension {m}")
            if max_abs(u.conj().T @ u - np.eye(m)) > 1e-10:
                raise NotUnitary(f"block unitary deviates from unitarity by more than 1e-10")
        object.__setattr__(self, "multiplicities", c)
        object.__setattr__(self, "unitaries", mats)


def _segments(f: Morphism, x: int):
    """Ascending-``y`` layout of codomain block ``x``: (y, offset, copies, n_y)."""
    out = []
    offset = 0
    for y, n in enumerate(f.domain.blocks):
        copies = int(f.multiplicities[x, y])
        if copies > 0:
            out.append((y, offset, copies, n))
            offset += copies * n
    return out


def apply(f: Morphism, b: AlgebraElement) -> AlgebraElement:
    """Image of a domain element under the homomorphism."""
    if b.shape != f.domain:
        raise ShapeMismatch(f"element on {b.shape.blocks} fed to morphism with domain {f.domain.blocks}")
    blocks = []
    for x, m in enumerate(f.codomain.blocks):
        inner = np.zeros((m, m), dtype=np.complex128)
        for y, offset, copies, n in _segments(f, x):
            seg = np.kron(np.eye(copies), b.blocks[y])
            inner[offset : offset + copies * n, offset : offset + copies * n] = seg
        u = f.unitaries[x]
        blocks.append(u @ inner @ u.conj().T)
    return AlgebraElement(f.codomain, tuple(blocks))


def pullback(f: Morphism, omega: State) -> State:
    """State on the domain dual to ``apply``: evaluate(pullback(f, w), b) == evaluate(w, apply(f, b)).

    Each weighted domain density arises by summing, over codomain blocks,
    the partial trace over the multiplicity index of the matching
    diagonal segment of ``U_x^dag (p_x rho_x) U_x``.
    """
    if omega.shape != f.codomain:
        raise ShapeMismatch(f"state on {omega.shape.blocks} pulled through morphism with codomain {f.codomain.blocks}")
    accum = [np.zeros((n, n), dtype=np.complex128) for n in f.domain.blocks]
    for x, (p, rho) in enumerate(zip(omega.weights, omega.densities)):
        if p <= 0.0:
            continue
        u = f.unitaries[x]
        m = u.conj().T @ (p * rho) @ u
        for y, offset, copies, n in _segments(f, x):
            seg = m[offset : offset + copies * n, offset : offset + copies * n]
            accum[y] += linalg.partial_trace_left(seg, copies, n)
    weights = np.array([max(np.trace(a).real, 0.0) for a in accum])
    densities = []
    for q, a, n in zip(weights, accum, f.domain.blocks):
        if q > 1e-13:
            sigma = a / np.trace(a).real
            densities.append((sigma + sigma.conj().T) / 2)
        else:
            densities.append(maximally_mixed_density(n))
    return State(f.domain, weights / weights.sum(), tuple(densities))


def identity_morphism(shape: AlgebraShape) -> Morphism:
    return Morphism(
        shape,
        shape,
        np.eye(len(shape), dtype=np.int64),
        tuple(np.eye(m, dtype=np.complex128) for m in shape.blocks),
    )


def initial(shape: AlgebraShape) -> Morphism:
    """The unique unital morphism from the scalars into ``shape``."""
    c = np.array([[m] for m in shape.blocks], dtype=np.int64)
    return Morphism(
        AlgebraShape((1,)),
        shape,
        c,
        tuple(np.eye(m, dtype=np.complex128) for m in shape.blocks),
    )


def _composition_data(f: Morphism, g: Morphism, x: int) -> np.ndarray:
    """Unitary for codomain block ``x`` of ``f o g``.

    Applying f after g interleaves the copies of g's domain blocks as
    (y, f-copy, z, g-copy); the canonical layout wants all copies of each
    z contiguous in ascending z, so the conjugating unitary is
    U_x @ blockdiag_y(kron(eye(c_f[x,y]), V_y)) @ P with P the regrouping
    permutation.
    """
    m = f.codomain.blocks[x]
    dims_z = g.domain.blocks
    c_total = (f.multiplicities @ g.multiplicities)[x]

    spread = np.zeros((m, m), dtype=np.complex128)
    for y, offset, copies, n in _segments(f, x):
        blk = np.kron(np.eye(copies), g.unitaries[y])
        spread[offset : offset + copies * n, offset : offset + copies * n] = blk

    canon_start = np.concatenate([[0], np.cumsum(np.asarray(c_total) * np.asarray(dims_z))])
    copy_count = [0] * len(dims_z)
    perm = np.empty(m, dtype=np.int64)
    pos = 0
    for y, _, copies_f, _ in _segments(f, x):
        for _copy_f in range(copies_f):
            for z, dz in enumerate(dims_z):
                for _copy_g in range(int(g.multiplicities[y, z])):
                    target = canon_start[z] + copy_count[z] * dz
                    perm[pos : pos + dz] = np.arange(target, target + dz)
                    copy_count[z] += 1
                    pos += dz
    p_mat = np.zeros((m, m), dtype=np.complex128)
    p_mat[np.arange(m), perm] = 1.0
    return f.unitaries[x] @ spread @ p_mat


def _probe_element(shape: AlgebraShape) -> AlgebraElement:
    """Deterministic dense element with distinct entries, for self-checks."""
    blocks = []
    for k, n in enumerate(shape.blocks):
        i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        blocks.append((1.0 + k + i + 2 * j) + 1j * (i - j) / (n + 1))
    return AlgebraElement(shape, tuple(blocks))


def compose(f: Morphism, g: Morphism) -> Morphism:
    """Composite ``f o g`` in canonical form (g applied first)."""
    if g.codomain != f.domain:
        raise ShapeMismatch(f"cannot compose: inner codomain {g.codomain.blocks} != outer domain {f.domain.blocks}")
    c = f.multiplicities @ g.multiplicities
    unitaries = tuple(_composition_data(f, g, x) for x in range(len(f.codomain)))
    h = Morphism(g.domain, f.codomain, c, unitaries)
    if __debug__:
        probe = _probe_element(g.domain)
        direct = apply(h, probe)
        sequential = apply(f, apply(g, probe))
        worst = max(max_abs(a - b) for a, b in zip(direct.blocks, sequential.blocks))
        assert worst <= 1e-8, f"composite disagrees with sequential application by {worst:.3e}"
    return h


def is_isomorphism(f: Morphism) -> bool:
    """True iff the multiplicity matrix is a block-dimension-matching permutation."""
    c = f.multiplicities
    if c.shape[0] != c.shape[1]:
        return False
    if np.any((c != 0) & (c != 1)):
        return False
    if np.any(c.sum(axis=0) != 1) or np.any(c.sum(axis=1) != 1):
        return False
    for x, y in zip(*np.nonzero(c)):
        if f.codomain.blocks[x] != f.domain.blocks[y]:
            return False
    return True


def preserves_orthogonality(f: Morphism, omega: State, xi: State, tol: float = DEFAULT_TOL) -> bool:
    """Whether the pullbacks of a mutually orthogonal pair stay orthogonal."""
    if not are_orthogonal(omega, xi, tol):
        raise NotOrthogonalInput("input states are not mutually orthogonal")
    return are_orthogonal(pullback(f, omega), pullback(f, xi), tol)


def measurement_morphism(
    codomain: AlgebraShape, block: int, observable, tol: float = DEFAULT_TOL
) -> Morphism:
    """Morphism from the classical algebra of an observable's spectrum.

    Each spectrum point (eigenvalues clustered within ``tol``, listed in
    descending order) maps to its spectral projection inside ``block``;
    the largest eigenvalue additionally carries the identity of every
    other codomain block so the morphism is unital.
    """
    m = codomain.blocks[block]
    if m < 2:
        raise ShapeMismatch("measurement needs a block of dimension at least 2")
    obs = as_matrix(observable)
    if obs.shape != (m, m):
        raise ShapeMismatch(f"observable of shape {obs.shape} does not fit block dimension {m}")
    if not linalg.is_hermitian(obs, tol):
        raise NotHermitian("observable must be Hermitian")
    vals, vecs = linalg.eigh(obs, tol)
    cluster_sizes = [1]
    for i in range(1, len(vals)):
        if vals[i - 1] - vals[i] <= tol:
            cluster_sizes[-1] += 1
        else:
            cluster_sizes.append(1)
    k = len(cluster_sizes)
    if k < 2:
        raise DegenerateSpectrum("all eigenvalues coincide; the induced morphism is the scalar embedding")
    domain = AlgebraShape((1,) * k)
    c = np.zeros((len(codomain), k), dtype=np.int64)
    c[block] = cluster_sizes
    for x, mx in enumerate(codomain.blocks):
        if x != block:
            c[x, 0] = mx  # designated largest eigenvalue absorbs the other blocks
    unitaries = [np.eye(mx, dtype=np.complex128) for mx in codomain.blocks]
    unitaries[block] = vecs
    return Morphism(domain, codomain, c, tuple(unitaries))


def summand_projection(a: AlgebraShape, b: AlgebraShape) -> Morphism:
    """Projection ``A + B -> A`` dropping the second summand."""
    domain = direct_sum_shape(a, b)
    c = np.zeros((len(a), len(domain)), dtype=np.int64)
    for x in range(len(a)):
        c[x, x] = 1
    return Morphism(domain, a, c, tuple(np.eye(m, dtype=np.complex128) for m in a.blocks))


def external_sum_morphism(f: Morphism, g: Morphism) -> Morphism:
    """Blockwise direct sum ``f + g`` acting summand by summand."""
    domain = direct_sum_shape(f.domain, g.domain)
    codomain = direct_sum_shape(f.codomain, g.codomain)
    c = np.zeros((len(codomain), len(domain)), dtype=np.int64)
    c[: len(f.codomain), : len(f.domain)] = f.multiplicities
    c[len(f.codomain) :, len(f.domain) :] = g.multiplicities
    return Morphism(domain, codomain, c, f.unitaries + g.unitaries)


def extensionally_equal(f: Morphism, g: Morphism, tol: float = 1e-9) -> bool:
    """Apply-equality on the matrix-unit basis of the domain.

    The (multiplicities, unitaries) data is not unique, so value-level
    equality of morphisms is decided extensionally.
    """
    if f.domain != g.domain or f.codomain != g.codomain:
        return False
    for y, n in enumerate(f.domain.blocks):
        for i in range(n):
            for j in range(n):
                blocks = [np.zeros((d, d), dtype=np.complex128) for d in f.domain.blocks]
                blocks[y][i, j] = 1.0
                unit = AlgebraElement(f.domain, tuple(blocks))
                fa, ga = apply(f, unit), apply(g, unit)
                if any(max_abs(p - q) > tol for p, q in zip(fa.blocks, ga.blocks)):
                    return False
    return True


def morphism_to_json(f: Morphism) -> dict:
    return {
        "domain": list(f.domain.blocks),
        "codomain": list(f.codomain.blocks),
        "multiplicities": [[int(v) for v in row] for row in f.multiplicities],
        "unitaries": [linalg.matrix_to_json(u) for u in f.unitaries],
    }


def morphism_from_json(data) -> Morphism:
    try:
        domain = AlgebraShape(tuple(data["domain"]))
        codomain = AlgebraShape(tuple(data["codomain"]))
        c = np.asarray(data["multiplicities"])
        raw = data.get("unitaries")
    except (KeyError, TypeError) as exc:
        raise ShapeMismatch(f"malformed morphism encoding: missing or bad field {exc}") from exc
    if raw is None:
        unitaries = tuple(np.eye(m, dtype=np.complex128) for m in codomain.blocks)
    else:
        unitaries = tuple(linalg.matrix_from_json(u) for u in raw)
    return Morphism(domain, codomain, c, unitaries)
