"""Finite-dimensional block algebras and their elements.

An algebra here is a direct sum of full complex matrix blocks, recorded
as the list of block dimensions.  An element is one square matrix per
block.  Multiplication, adjoints, and positivity are all blockwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ShapeMismatch
from .linalg import DEFAULT_TOL, as_matrix, max_abs


@dataclass(frozen=True)
class AlgebraShape:
    """Block dimensions ``(m_0, ..., m_{k-1})``, every ``m_x >= 1``."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(int(m) for m in self.blocks))
        if not self.blocks or any(m < 1 for m in self.blocks):
            raise ShapeMismatch(f"block dimensions must be positive, got {self.blocks}")

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def total_dim(self) -> int:
        return sum(self.blocks)

    def is_commutative(self) -> bool:
        """True iff every block is one-dimensional (a classical algebra)."""
        return all(m == 1 for m in self.blocks)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """One matrix per block of ``shape``."""

    shape: AlgebraShape
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        mats = tuple(as_matrix(b) for b in self.blocks)
        if len(mats) != len(self.shape):
            raise ShapeMismatch(f"expected {len(self.shape)} blocks, got {len(mats)}")
        for m, b in zip(self.shape.blocks, mats):
            if b.shape != (m, m):
                raise ShapeMismatch(f"block of size {b.shape} does not match dimension {m}")
        object.__setattr__(self, "blocks", mats)


def _check_same_shape(a: AlgebraElement, b: AlgebraElement):
    if a.shape != b.shape:
        raise ShapeMismatch(f"shapes differ: {a.shape.blocks} vs {b.shape.blocks}")


def element(shape: AlgebraShape, blocks) -> AlgebraElement:
    return AlgebraElement(shape, tuple(blocks))


def identity(shape: AlgebraShape) -> AlgebraElement:
    return AlgebraElement(shape, tuple(np.eye(m, dtype=np.complex128) for m in shape.blocks))


def zero(shape: AlgebraShape) -> AlgebraElement:
    return AlgebraElement(shape, tuple(np.zeros((m, m), dtype=np.complex128) for m in shape.blocks))


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _check_same_shape(a, b)
    return AlgebraElement(a.shape, tuple(x @ y for x, y in zip(a.blocks, b.blocks)))


def adjoint(a: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(a.shape, tuple(x.conj().T for x in a.blocks))


def add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _check_same_shape(a, b)
    return AlgebraElement(a.shape, tuple(x + y for x, y in zip(a.blocks, b.blocks)))


def subtract(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _check_same_shape(a, b)
    return AlgebraElement(a.shape, tuple(x - y for x, y in zip(a.blocks, b.blocks)))


def scale(c: complex, a: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(a.shape, tuple(c * x for x in a.blocks))


def is_positive(a: AlgebraElement, tol: float = DEFAULT_TOL) -> bool:
    """Blockwise Hermitian with all eigenvalues at least ``-tol``."""
    for b in a.blocks:
        if not linalg.is_hermitian(b, tol):
            return False
        if np.linalg.eigvalsh((b + b.conj().T) / 2)[0] < -tol:
            return False
    return True


def is_projection(p: AlgebraElement, tol: float = DEFAULT_TOL) -> bool:
    """Checks ``p* p = p`` blockwise in max-norm."""
    return all(max_abs(b.conj().T @ b - b) <= tol for b in p.blocks)


def element_norm(a: AlgebraElement) -> float:
    """Operator norm: the largest singular value over all blocks."""
    return max(np.sqrt(np.linalg.eigvalsh(b.conj().T @ b)[-1]) for b in a.blocks)


def direct_sum_shape(a: AlgebraShape, b: AlgebraShape) -> AlgebraShape:
    return AlgebraShape(a.blocks + b.blocks)


def direct_sum_element(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(direct_sum_shape(a.shape, b.shape), a.blocks + b.blocks)


def embed_left(a: AlgebraElement, b_shape: AlgebraShape) -> AlgebraElement:
    """Extend by zero blocks on the right summand of ``shape(a) + b_shape``."""
    return direct_sum_element(a, zero(b_shape))


def embed_right(a_shape: AlgebraShape, b: AlgebraElement) -> AlgebraElement:
    return direct_sum_element(zero(a_shape), b)


def element_to_json(a: AlgebraElement) -> dict:
    return {
        "shape": list(a.shape.blocks),
        "blocks": [linalg.matrix_to_json(b) for b in a.blocks],
    }


def element_from_json(data) -> AlgebraElement:
    try:
        shape = AlgebraShape(tuple(data["shape"]))
        blocks = tuple(linalg.matrix_from_json(b) for b in data["blocks"])
    except (KeyError, TypeError) as exc:
        raise ShapeMismatch(f"malformed element encoding: missing or bad field {exc}") from exc
    return AlgebraElement(shape, blocks)
