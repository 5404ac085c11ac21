"""Dense complex-matrix kernel.

Hermitian eigendecompositions, logarithms restricted to the positive
support, Kronecker products, partial traces, and seeded sampling of
unitaries, density matrices, and simplex points.  Everything here is a
pure function of its inputs; matrices are plain ``numpy`` arrays of
``complex128``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitian, NotPSD, NotSquare, ShapeMismatch

# One tolerance governs every "is zero / is PSD / is Hermitian" decision
# so the verification suites stay coherent.
DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class Seed:
    """Deterministic RNG key: a 64-bit seed plus a substream index.

    Identical ``(seed, stream)`` pairs reproduce identical sample
    sequences.  Substreams are derived counter-style via
    ``numpy.random.SeedSequence`` spawn keys, so parallel consumers can
    draw independently without sharing generator state.
    """

    seed: int
    stream: int = 0

    def rng(self, *substream: int) -> np.random.Generator:
        key = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream, *substream))
        return np.random.default_rng(key)

    def child(self, index: int) -> "Seed":
        # Bijective LCG step keeps child streams distinct and within uint32.
        return Seed(self.seed, (self.stream * 0x9E3779B1 + index + 1) % (1 << 32))


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ShapeMismatch(f"expected a matrix, got array of ndim {a.ndim}")
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise ShapeMismatch("matrix entries must be finite")
    return a


def max_abs(m: np.ndarray) -> float:
    """Max-norm ``max |m_ij|``; 0 for empty arrays."""
    return float(np.max(np.abs(m))) if m.size else 0.0


def is_hermitian(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return m.shape[0] == m.shape[1] and max_abs(m - m.conj().T) <= tol


def eigh(h, tol: float = DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues sorted in
    descending order and eigenvectors as the matching unitary columns,
    so that ``h == V @ diag(vals) @ V.conj().T``.

    Raises NotSquare / NotHermitian if ``h`` fails the symmetry check
    at tolerance ``tol``.
    """
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {h.shape}")
    if max_abs(h - h.conj().T) > tol:
        raise NotHermitian(f"matrix deviates from its adjoint by {max_abs(h - h.conj().T):.3e} > {tol:.3e}")
    vals, vecs = np.linalg.eigh(h)
    order = np.argsort(vals)[::-1]
    return vals[order], vecs[:, order]


def psd_log(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Matrix logarithm on the support of a PSD matrix.

    Eigenvalues in ``(-tol, tol]`` are treated as zero and contribute
    nothing (the ``0 log 0 = 0`` convention); an eigenvalue below
    ``-tol`` raises NotPSD.
    """
    vals, vecs = eigh(m, tol)
    if vals[-1] < -tol:
        raise NotPSD(f"eigenvalue {vals[-1]:.3e} below -{tol:.3e}")
    keep = vals > tol
    log_vals = np.zeros_like(vals)
    log_vals[keep] = np.log(vals[keep])
    return (vecs * log_vals) @ vecs.conj().T


def tensor(a, b) -> np.ndarray:
    """Kronecker product with the left factor as the slow (outer) index.

    With this convention ``tensor(eye(c), B)`` is literally the block
    diagonal ``diag(B, ..., B)`` with ``c`` copies.
    """
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace_left(m, d_left: int, d_right: int) -> np.ndarray:
    """Trace out the left (slow) factor of a ``(d_left*d_right)``-square matrix."""
    m = as_matrix(m)
    d = d_left * d_right
    if m.shape != (d, d):
        raise ShapeMismatch(f"expected shape {(d, d)} for d_left={d_left}, d_right={d_right}, got {m.shape}")
    return np.einsum("aiaj->ij", m.reshape(d_left, d_right, d_left, d_right))


def partial_trace_right(m, d_left: int, d_right: int) -> np.ndarray:
    """Trace out the right (fast) factor of a ``(d_left*d_right)``-square matrix."""
    m = as_matrix(m)
    d = d_left * d_right
    if m.shape != (d, d):
        raise ShapeMismatch(f"expected shape {(d, d)} for d_left={d_left}, d_right={d_right}, got {m.shape}")
    return np.einsum("iaja->ij", m.reshape(d_left, d_right, d_left, d_right))


def sample_unitary(n: int, seed: Seed, *substream: int) -> np.ndarray:
    """Haar-random ``n x n`` unitary (QR of a complex Ginibre matrix).

    The QR phase ambiguity is fixed by making the diagonal of R positive,
    which is what makes the distribution Haar rather than merely unitary.
    """
    rng = seed.rng(*substream) if substream else seed.rng()
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def sample_density(n: int, seed: Seed, *substream: int, rank: int | None = None) -> np.ndarray:
    """Random density matrix ``G G^dag / tr(G G^dag)`` for complex Gaussian G.

    ``rank`` restricts G to ``n x rank`` columns, producing a density of
    that rank almost surely.
    """
    rng = seed.rng(*substream) if substream else seed.rng()
    k = n if rank is None else rank
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    w = g @ g.conj().T
    rho = w / np.trace(w).real
    return (rho + rho.conj().T) / 2


def sample_simplex(n: int, seed: Seed, *substream: int) -> np.ndarray:
    """Uniform (Dirichlet(1,...,1)) point on the probability simplex."""
    rng = seed.rng(*substream) if substream else seed.rng()
    return rng.dirichlet(np.ones(n))


def matrix_to_json(m: np.ndarray) -> list:
    """Row-major nested lists; each complex entry becomes ``[re, im]``."""
    m = as_matrix(m)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(data) -> np.ndarray:
    try:
        rows = [[complex(entry[0], entry[1]) for entry in row] for row in data]
    except (TypeError, IndexError) as exc:
        raise ShapeMismatch(f"malformed matrix encoding: {exc}") from exc
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ShapeMismatch("matrix rows must be nonempty and of equal length")
    return as_matrix(rows)
