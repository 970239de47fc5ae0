"""Symbols, reconstruction, star-product kernels, and intertwiners.

The symbol of an operator is its vector of trace pairings with the
dequantizers; reconstruction sums quantizers against the symbol.  The
star-product kernel is the rank-3 tensor that makes symbol multiplication
mirror operator multiplication, and intertwiners translate symbols between
two schemes on the same space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    LengthMismatchError,
    NotUnitaryError,
)
from .matrixcore import DEFAULT_TOL, ToleranceConfig, as_matrix
from .scheme import Scheme, with_canonical_quantizers


def symbol(s: Scheme, a) -> np.ndarray:
    """Symbol vector f_A(k) = Tr[U_k^dag A] of an operator."""
    a = as_matrix(a)
    if a.shape != (s.d, s.d):
        raise DimensionMismatchError(
            f"operator shape {a.shape} does not match scheme dimension d={s.d}"
        )
    return np.einsum("kab,ab->k", s.dequantizers.conj(), a)


def reconstruct(s: Scheme, f) -> np.ndarray:
    """Operator sum_k f(k) D_k rebuilt from a symbol vector."""
    qs = s.require_quantizers()
    f = np.asarray(f, dtype=complex).reshape(-1)
    if f.size != s.n_points:
        raise LengthMismatchError(
            f"symbol length {f.size} does not match scheme size N={s.n_points}"
        )
    return np.tensordot(f, qs, axes=(0, 0))


@dataclass(frozen=True)
class StarKernel:
    """Rank-3 tensor K(k, k', k'') = Tr[U_k^dag D_k' D_k'']."""

    d: int
    values: np.ndarray

    @property
    def n_points(self) -> int:
        return self.values.shape[0]


def star_kernel(s: Scheme) -> StarKernel:
    """Kernel tensor of the scheme (quantizers required)."""
    qs = s.require_quantizers()
    products = np.einsum("xab,ybc->xyac", qs, qs)
    values = np.einsum("kab,xyab->kxy", s.dequantizers.conj(), products)
    return StarKernel(d=s.d, values=values)


def star_multiply(kernel: StarKernel, f_a, f_b) -> np.ndarray:
    """Symbol of the operator product: (f_a * f_b)(k) summed through the kernel."""
    f_a = np.asarray(f_a, dtype=complex).reshape(-1)
    f_b = np.asarray(f_b, dtype=complex).reshape(-1)
    n = kernel.n_points
    if f_a.size != n or f_b.size != n:
        raise LengthMismatchError(
            f"symbol lengths ({f_a.size}, {f_b.size}) do not match kernel size N={n}"
        )
    return np.einsum("kab,a,b->k", kernel.values, f_a, f_b)


def associativity_residual(kernel: StarKernel) -> float:
    """Max-abs difference between the two ways of composing the kernel twice.

    Exhaustive over all N^4 index tuples.
    """
    k = kernel.values
    left = np.einsum("klm,lab->kabm", k, k)
    right = np.einsum("kal,lbm->kabm", k, k)
    return float(np.abs(left - right).max())


@dataclass(frozen=True)
class IntertwinerPair:
    """Kernels translating symbols between two schemes on the same space.

    ``forward`` (M x N) maps source-scheme symbols to target-scheme symbols;
    ``backward`` (N x M) maps them back, acting as the identity on the range
    of the source symbol map.
    """

    forward: np.ndarray
    backward: np.ndarray


def intertwiner(
    source: Scheme, target: Scheme, tol: ToleranceConfig = DEFAULT_TOL
) -> IntertwinerPair:
    """Intertwining kernel pair from trace pairings across the two schemes.

    Uses attached quantizers when present and canonical ones otherwise; both
    schemes must be tomographic.
    """
    if source.d != target.d:
        raise DimensionMismatchError(
            f"schemes act on different spaces: d={source.d} vs d={target.d}"
        )
    source = with_canonical_quantizers(source, tol)
    target = with_canonical_quantizers(target, tol)
    forward = np.einsum("kab,lab->kl", target.dequantizers.conj(), source.quantizers)
    backward = np.einsum("kab,lab->kl", source.dequantizers.conj(), target.quantizers)
    return IntertwinerPair(forward=forward, backward=backward)


def cubic_unitary_residual(u, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Max-abs entry of u - (u u*) u^tr; zero for every unitary u."""
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        raise NotUnitaryError(f"expected a square matrix, got shape {u.shape}")
    unitarity = float(np.abs(u.conj().T @ u - np.eye(u.shape[0])).max())
    if unitarity > tol.residual_tol:
        raise NotUnitaryError(f"matrix is not unitary (residual {unitarity:.3e})")
    return float(np.abs(u - (u @ u.conj()) @ u.T).max())
