"""Operators as vectors: row-stacking and orthonormal-basis vectorization.

A d x d operator and a d^2-vector carry the same data; the trace pairing
Tr[X^dag Y] on operators equals the standard inner product of the vectors.
Row stacking concatenates the rows of the matrix (a reshape in C order);
the general variant expands the operator over any trace-orthonormal
operator basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    NotSquareLengthError,
    WrongCountError,
)
from .matrixcore import DEFAULT_TOL, ToleranceConfig, as_matrix

ROW_STACKING_TAG = "rowstacking"

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
for _pauli in (PAULI_X, PAULI_Y, PAULI_Z):
    _pauli.setflags(write=False)


def matrix_unit(d: int, i: int, j: int) -> np.ndarray:
    """d x d matrix with a single 1 at row i, column j (1-based indices)."""
    if not (1 <= i <= d and 1 <= j <= d):
        raise IndexError(f"matrix unit indices ({i}, {j}) out of range for d={d}")
    out = np.zeros((d, d), dtype=complex)
    out[i - 1, j - 1] = 1.0
    return out


def hs_inner(x, y) -> complex:
    """Trace inner product Tr[X^dag Y] of two same-shaped square operators."""
    x = as_matrix(x)
    y = as_matrix(y)
    if x.shape != y.shape or x.shape[0] != x.shape[1]:
        raise DimensionMismatchError(
            f"operators must share a square shape, got {x.shape} and {y.shape}"
        )
    return complex(np.trace(x.conj().T @ y))


def validate_orthonormal_basis(ops) -> float:
    """Max deviation of the pairwise Gram matrix Tr[B_mu^dag B_nu] from the identity.

    The operator count must be d^2 for d x d members.
    """
    ops = np.asarray(ops, dtype=complex)
    if ops.ndim != 3 or ops.shape[1] != ops.shape[2]:
        raise DimensionMismatchError(
            f"expected a stack of square operators, got shape {ops.shape}"
        )
    d = ops.shape[1]
    if ops.shape[0] != d * d:
        raise WrongCountError(f"expected {d * d} operators for d={d}, got {ops.shape[0]}")
    gram = np.tensordot(ops.conj(), ops, axes=([1, 2], [1, 2]))
    return float(np.abs(gram - np.eye(d * d)).max())


def row_stack(z) -> np.ndarray:
    """Concatenate the rows of an m x n matrix into an mn-vector."""
    return as_matrix(z).reshape(-1)


def unstack(v, rows: int, cols: int) -> np.ndarray:
    """Inverse of row_stack for a given target shape."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != rows * cols:
        raise DimensionMismatchError(f"vector of length {v.size} is not {rows}x{cols}")
    return v.reshape(rows, cols)


@dataclass(frozen=True)
class VectorizationBasis:
    """Rule mapping d x d operators to d^2-vectors.

    ``ops is None`` selects row stacking, component k = Z_ij with
    k = d(i-1) + j; otherwise components are Tr[B_mu^dag Z] over the stored
    trace-orthonormal operator stack.
    """

    d: int
    ops: np.ndarray | None = None
    tag: str = ROW_STACKING_TAG

    def __post_init__(self) -> None:
        if self.d < 1:
            raise DimensionMismatchError(f"dimension must be positive, got {self.d}")
        if self.ops is not None:
            ops = np.asarray(self.ops, dtype=complex)
            ops.setflags(write=False)
            object.__setattr__(self, "ops", ops)

    @classmethod
    def row_stacking(cls, d: int) -> "VectorizationBasis":
        return cls(d=d)

    @classmethod
    def orthonormal(
        cls,
        ops,
        tag: str = "orthonormal",
        tol: ToleranceConfig = DEFAULT_TOL,
    ) -> "VectorizationBasis":
        """Basis over an explicit operator stack, validated for trace orthonormality."""
        ops = np.asarray(ops, dtype=complex)
        residual = validate_orthonormal_basis(ops)
        if residual > tol.residual_tol:
            raise DimensionMismatchError(
                f"operator basis is not trace-orthonormal (residual {residual:.3e})"
            )
        return cls(d=ops.shape[1], ops=ops, tag=tag)

    @property
    def dim(self) -> int:
        """Length of the produced vectors."""
        return self.d * self.d


def pauli_basis() -> VectorizationBasis:
    """The qubit basis (I, sigma_x, sigma_y, sigma_z) / sqrt(2)."""
    ops = np.stack([np.eye(2, dtype=complex), PAULI_X, PAULI_Y, PAULI_Z]) / np.sqrt(2)
    return VectorizationBasis(d=2, ops=ops, tag="pauli")


def vectorize(z, basis: VectorizationBasis) -> np.ndarray:
    """d^2-vector of the operator Z under the given basis."""
    z = as_matrix(z)
    if z.shape != (basis.d, basis.d):
        raise DimensionMismatchError(
            f"operator shape {z.shape} does not match basis dimension d={basis.d}"
        )
    if basis.ops is None:
        return z.reshape(-1).copy()
    return np.tensordot(basis.ops.conj(), z, axes=([1, 2], [0, 1]))


def devectorize(v, basis: VectorizationBasis) -> np.ndarray:
    """Operator whose vectorization under the basis is v."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    side = np.sqrt(v.size)
    if side != np.floor(side):
        raise NotSquareLengthError(f"vector length {v.size} is not a perfect square")
    if v.size != basis.dim:
        raise DimensionMismatchError(
            f"vector length {v.size} does not match basis dimension {basis.dim}"
        )
    if basis.ops is None:
        return v.reshape(basis.d, basis.d)
    return np.tensordot(v, basis.ops, axes=(0, 0))
