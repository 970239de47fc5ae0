"""Dense complex matrix primitives: eigen/singular decompositions, rank, inverse.

Matrices are plain ``numpy.ndarray`` values in row-major (C) order, so the
row-stacking map between operators and vectors is a reshape.  All functions
are pure and delegate the numerics to ``numpy.linalg``; what this module adds
are the contracts (ordering, tolerance semantics) and the error types.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NonHermitianError, SingularMatrixError


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds used across the package.

    rank_tol is relative (singular values are compared against
    ``rank_tol * sigma_max``); residual_tol bounds max-abs entries of
    identity-style residuals; eig_tol is the eigenvalue sign threshold.
    """

    rank_tol: float = 1e-10
    residual_tol: float = 1e-10
    eig_tol: float = 1e-10

    def __post_init__(self) -> None:
        for name in ("rank_tol", "residual_tol", "eig_tol"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie strictly between 0 and 1, got {value}")


DEFAULT_TOL = ToleranceConfig()


def as_matrix(m) -> np.ndarray:
    """Coerce input to a 2-D complex array."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    return arr


def _require_square(m: np.ndarray) -> np.ndarray:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    return m


def hermiticity_residual(m) -> float:
    """Max-abs entry of M - M^dag."""
    m = _require_square(m)
    return float(np.abs(m - m.conj().T).max()) if m.size else 0.0


def hermitian_eig(m, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending, real) and unitary eigenvectors of a Hermitian matrix.

    Raises NonHermitianError if the hermiticity residual exceeds tol.residual_tol.
    """
    m = _require_square(m)
    res = hermiticity_residual(m)
    if res > tol.residual_tol:
        raise NonHermitianError(f"hermiticity residual {res:.3e} exceeds {tol.residual_tol:.3e}")
    eigenvalues, eigenvectors = np.linalg.eigh(m)
    return eigenvalues, eigenvectors


def singular_values(m) -> np.ndarray:
    """Singular values of a matrix, descending."""
    m = as_matrix(m)
    return np.linalg.svd(m, compute_uv=False)


def rank(m, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Number of singular values above ``rank_tol * sigma_max``; 0 for the zero matrix."""
    sv = singular_values(m)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > tol.rank_tol * sv[0]))


def inverse(m, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Matrix inverse; raises SingularMatrixError when rank-deficient within tolerance."""
    m = _require_square(m)
    if rank(m, tol) < m.shape[0]:
        raise SingularMatrixError(
            f"matrix of shape {m.shape} has numerical rank {rank(m, tol)}"
        )
    return np.linalg.inv(m)
