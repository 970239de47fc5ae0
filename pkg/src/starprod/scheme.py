"""Star-product schemes: dequantization matrices, dual quantizers, classification.

A scheme is an ordered family of N dequantizer operators on a d-dimensional
space, optionally paired with quantizers.  Stacking the vectorized
dequantizers as columns gives the d^2 x N dequantization matrix; its rank
decides whether symbols determine operators, and its shape/structure decides
the scheme class (underfilled / minimal / overfilled, self-dual, POVM,
matrix-unit-like).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidGaugeError,
    MissingQuantizersError,
    NonHermitianMemberError,
    NotOverfilledError,
    NotSquareError,
    NotTomographicError,
)
from .matrixcore import DEFAULT_TOL, ToleranceConfig, rank, singular_values
from .operator_space import VectorizationBasis, devectorize, vectorize

Cardinality = Literal["underfilled", "minimal", "overfilled"]


@dataclass(frozen=True)
class Scheme:
    """Ordered dequantizer family with optional quantizers.

    ``dequantizers`` has shape (N, d, d); ``quantizers`` is None or the same
    shape.  Values are treated as immutable.
    """

    dequantizers: np.ndarray
    quantizers: np.ndarray | None = None
    name: str | None = None

    def __post_init__(self) -> None:
        deq = np.asarray(self.dequantizers, dtype=complex)
        if deq.ndim != 3 or deq.shape[1] != deq.shape[2]:
            raise DimensionMismatchError(
                f"dequantizers must be a stack of square matrices, got shape {deq.shape}"
            )
        deq.setflags(write=False)
        object.__setattr__(self, "dequantizers", deq)
        if self.quantizers is not None:
            qs = np.asarray(self.quantizers, dtype=complex)
            if qs.shape != deq.shape:
                raise DimensionMismatchError(
                    f"quantizers shape {qs.shape} does not match dequantizers {deq.shape}"
                )
            qs.setflags(write=False)
            object.__setattr__(self, "quantizers", qs)

    @property
    def d(self) -> int:
        return self.dequantizers.shape[1]

    @property
    def n_points(self) -> int:
        return self.dequantizers.shape[0]

    def require_quantizers(self) -> np.ndarray:
        if self.quantizers is None:
            raise MissingQuantizersError(
                f"scheme {self.name or '<unnamed>'} carries no quantizers"
            )
        return self.quantizers

    def with_quantizers(self, quantizers: np.ndarray) -> "Scheme":
        return dataclasses.replace(self, quantizers=quantizers)


@dataclass(frozen=True)
class PovmDiagnostics:
    """Residuals of the POVM conditions over the dequantizer family."""

    sum_residual: float
    hermiticity_residual: float
    min_effect_eigenvalue: float
    is_povm: bool


@dataclass(frozen=True)
class NegativityReport:
    """Minimum eigenvalue across each Hermitian operator family."""

    min_dequantizer_eigenvalue: float
    min_quantizer_eigenvalue: float | None


@dataclass(frozen=True)
class SchemeReport:
    """Full classification of a scheme.

    ``scaled_unitary`` and ``matrix_unit_like`` only apply to square (N = d^2)
    dequantization matrices and are None otherwise; ``negativity`` is None
    when a family member is not Hermitian.
    """

    cardinality: Cardinality
    tomographic: bool
    rank: int
    condition_number: float
    self_dual_coefficient: float | None
    scaled_unitary: float | None
    povm: PovmDiagnostics
    negativity: NegativityReport | None
    matrix_unit_like: np.ndarray | None


def _default_basis(s: Scheme, basis: VectorizationBasis | None) -> VectorizationBasis:
    if basis is None:
        return VectorizationBasis.row_stacking(s.d)
    if basis.d != s.d:
        raise DimensionMismatchError(
            f"basis dimension d={basis.d} does not match scheme dimension d={s.d}"
        )
    return basis


def _family_matrix(family: np.ndarray, basis: VectorizationBasis) -> np.ndarray:
    """Stack vectorized operators as columns of a d^2 x N matrix."""
    if basis.ops is None:
        n = family.shape[0]
        return family.reshape(n, -1).T.copy()
    return np.column_stack([vectorize(op, basis) for op in family])


def dequantization_matrix(s: Scheme, basis: VectorizationBasis | None = None) -> np.ndarray:
    """d^2 x N matrix whose column k is the vectorized k-th dequantizer."""
    return _family_matrix(s.dequantizers, _default_basis(s, basis))


def quantization_matrix(s: Scheme, basis: VectorizationBasis | None = None) -> np.ndarray:
    """d^2 x N matrix whose column k is the vectorized k-th quantizer."""
    return _family_matrix(s.require_quantizers(), _default_basis(s, basis))


def scheme_from_dequantization_matrix(
    mat,
    basis: VectorizationBasis,
    name: str | None = None,
    quantizer_matrix=None,
) -> Scheme:
    """Scheme whose dequantizers are the devectorized columns of ``mat``."""
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != basis.dim:
        raise DimensionMismatchError(
            f"expected a {basis.dim} x N matrix, got shape {mat.shape}"
        )
    deq = np.stack([devectorize(col, basis) for col in mat.T])
    qs = None
    if quantizer_matrix is not None:
        quantizer_matrix = np.asarray(quantizer_matrix, dtype=complex)
        if quantizer_matrix.shape != mat.shape:
            raise DimensionMismatchError(
                "quantizer matrix shape does not match dequantization matrix"
            )
        qs = np.stack([devectorize(col, basis) for col in quantizer_matrix.T])
    return Scheme(dequantizers=deq, quantizers=qs, name=name)


def canonical_quantizers(s: Scheme, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Quantizer family dual to the dequantizers.

    Minimal case (N = d^2): the inverse-adjoint of the dequantization matrix.
    Overfilled case: the pseudoinverse dual, (U U^dag)^-1 U.  Raises
    NotTomographicError when the dequantizers do not span the operator space.
    """
    basis = VectorizationBasis.row_stacking(s.d)
    u_mat = dequantization_matrix(s, basis)
    d_sq = s.d * s.d
    if rank(u_mat, tol) < d_sq:
        raise NotTomographicError(
            f"rank {rank(u_mat, tol)} < d^2 = {d_sq}; quantizers are undefined"
        )
    if s.n_points == d_sq:
        d_mat = np.linalg.inv(u_mat.conj().T)
    else:
        d_mat = np.linalg.inv(u_mat @ u_mat.conj().T) @ u_mat
    return np.stack([devectorize(col, basis) for col in d_mat.T])


def with_canonical_quantizers(s: Scheme, tol: ToleranceConfig = DEFAULT_TOL) -> Scheme:
    """Copy of the scheme with canonical quantizers attached (kept if present)."""
    if s.quantizers is not None:
        return s
    return s.with_quantizers(canonical_quantizers(s, tol))


def completeness_residual(s: Scheme) -> float:
    """Max-abs entry of sum_k |D_k><U_k| - I over the operator space."""
    qs = s.require_quantizers()
    basis = VectorizationBasis.row_stacking(s.d)
    u_mat = _family_matrix(s.dequantizers, basis)
    d_mat = _family_matrix(qs, basis)
    return float(np.abs(d_mat @ u_mat.conj().T - np.eye(s.d * s.d)).max())


def gauge_quantizers(s: Scheme, g_mat, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Quantizers shifted by a completeness-preserving gauge matrix.

    ``g_mat`` is d^2 x N in row-stacking coordinates and must satisfy
    U G^dag = 0 (its conjugated rows lie in the kernel of the dequantization
    matrix); only overfilled schemes admit a nonzero kernel.
    """
    if s.n_points <= s.d * s.d:
        raise NotOverfilledError(
            f"N = {s.n_points} <= d^2 = {s.d * s.d}: minimal schemes admit no gauge freedom"
        )
    basis = VectorizationBasis.row_stacking(s.d)
    u_mat = dequantization_matrix(s, basis)
    g_mat = np.asarray(g_mat, dtype=complex)
    if g_mat.shape != u_mat.shape:
        raise DimensionMismatchError(
            f"gauge matrix shape {g_mat.shape} does not match {u_mat.shape}"
        )
    violation = float(np.abs(u_mat @ g_mat.conj().T).max())
    if violation > tol.residual_tol:
        raise InvalidGaugeError(
            f"gauge matrix does not annihilate the dequantization matrix "
            f"(residual {violation:.3e})"
        )
    if s.quantizers is not None:
        d_mat = quantization_matrix(s, basis)
    else:
        d_mat = _family_matrix(canonical_quantizers(s, tol), basis)
    shifted = d_mat + g_mat
    return np.stack([devectorize(col, basis) for col in shifted.T])


def duality_matrix(s: Scheme) -> np.ndarray:
    """N x N pairing Delta(k, k') = Tr[U_k^dag D_k'].

    Reduces to the identity for minimal tomographic schemes; with canonical
    quantizers on an overfilled scheme it is the Hermitian projector onto the
    range of the symbol map.
    """
    qs = s.require_quantizers()
    return np.einsum("kab,lab->kl", s.dequantizers.conj(), qs)


def self_dual_coefficient(s: Scheme, tol: ToleranceConfig = DEFAULT_TOL) -> float | None:
    """Positive c with U_k = c D_k for all k, or None if the scheme is not self-dual.

    c is estimated from the Frobenius norms of the two families and then
    verified entrywise at relative tolerance.
    """
    qs = s.require_quantizers()
    u_norm = float(np.linalg.norm(s.dequantizers))
    d_norm = float(np.linalg.norm(qs))
    if u_norm == 0.0 or d_norm == 0.0:
        return None
    c = u_norm / d_norm
    scale = max(1.0, float(np.abs(s.dequantizers).max()))
    residual = float(np.abs(s.dequantizers - c * qs).max())
    if residual > tol.residual_tol * scale:
        return None
    return c


def scaled_unitary_check(u_mat, tol: ToleranceConfig = DEFAULT_TOL) -> float | None:
    """Positive c with U^dag U = c I for a square matrix, or None."""
    u_mat = np.asarray(u_mat, dtype=complex)
    if u_mat.ndim != 2 or u_mat.shape[0] != u_mat.shape[1]:
        raise NotSquareError(f"expected a square matrix, got shape {u_mat.shape}")
    gram = u_mat.conj().T @ u_mat
    c = float(np.mean(np.diag(gram).real))
    if c <= 0.0:
        return None
    residual = float(np.abs(gram - c * np.eye(u_mat.shape[0])).max())
    if residual > tol.residual_tol * c:
        return None
    return c


def _member_hermiticity(family: np.ndarray) -> np.ndarray:
    return np.abs(family - family.conj().transpose(0, 2, 1)).reshape(family.shape[0], -1).max(axis=1)


def povm_check(s: Scheme, tol: ToleranceConfig = DEFAULT_TOL) -> PovmDiagnostics:
    """POVM diagnostics of the dequantizer family.

    Minimum effect eigenvalue is taken over the Hermitian parts, which is
    exact whenever the hermiticity residual passes.
    """
    deq = s.dequantizers
    sum_residual = float(np.abs(deq.sum(axis=0) - np.eye(s.d)).max())
    herm_residual = float(_member_hermiticity(deq).max())
    herm_parts = (deq + deq.conj().transpose(0, 2, 1)) / 2
    min_eig = float(np.linalg.eigvalsh(herm_parts)[:, 0].min())
    is_povm = (
        sum_residual <= tol.residual_tol
        and herm_residual <= tol.residual_tol
        and min_eig >= -tol.eig_tol
    )
    return PovmDiagnostics(
        sum_residual=sum_residual,
        hermiticity_residual=herm_residual,
        min_effect_eigenvalue=min_eig,
        is_povm=is_povm,
    )


def negativity_report(s: Scheme, tol: ToleranceConfig = DEFAULT_TOL) -> NegativityReport:
    """Minimum eigenvalue across the dequantizer and (if present) quantizer families.

    Every member must be Hermitian within tolerance; a non-Hermitian member
    raises NonHermitianMemberError naming its 0-based position.
    """
    families = [("dequantizer", s.dequantizers)]
    if s.quantizers is not None:
        families.append(("quantizer", s.quantizers))
    minima: dict[str, float] = {}
    for label, family in families:
        residuals = _member_hermiticity(family)
        worst = int(np.argmax(residuals))
        if residuals[worst] > tol.residual_tol:
            raise NonHermitianMemberError(
                f"{label} {worst} is not Hermitian (residual {residuals[worst]:.3e})"
            )
        minima[label] = float(np.linalg.eigvalsh(family)[:, 0].min())
    return NegativityReport(
        min_dequantizer_eigenvalue=minima["dequantizer"],
        min_quantizer_eigenvalue=minima.get("quantizer"),
    )


def _fix_column_phases(u: np.ndarray, threshold: float = 1e-12) -> np.ndarray:
    """Rotate each column so its first entry of significant magnitude is real positive."""
    out = u.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        nz = np.flatnonzero(np.abs(col) > threshold)
        if nz.size:
            phase = col[nz[0]] / abs(col[nz[0]])
            out[:, j] = col / phase
    return out


def matrix_unit_like_detect(
    s: Scheme, tol: ToleranceConfig = DEFAULT_TOL
) -> np.ndarray | None:
    """Unitary u with U_{d(i-1)+j} = |psi_i><psi_j| over u's columns, or None.

    The columns of the returned matrix are phase-normalized (first
    significant entry real positive), so recovery is canonical up to the
    per-column phases the projector family cannot see.
    """
    d = s.d
    if s.n_points != d * d:
        return None
    deq = s.dequantizers
    for op in deq:
        sv = singular_values(op)
        if sv[0] <= tol.residual_tol or (d > 1 and sv[1] > tol.residual_tol * max(1.0, sv[0])):
            return None
    # Anchor psi_1 on the (1,1) projector, then transport it with the first
    # column of dequantizers; this fixes a globally consistent phase gauge.
    left, _, _ = np.linalg.svd(deq[0])
    psi = np.empty((d, d), dtype=complex)
    psi[:, 0] = _fix_column_phases(left[:, :1])[:, 0]
    for i in range(1, d):
        psi[:, i] = deq[i * d] @ psi[:, 0]
    if np.abs(psi.conj().T @ psi - np.eye(d)).max() > tol.residual_tol:
        return None
    expected = np.einsum("ai,bj->ijab", psi, psi.conj()).reshape(d * d, d, d)
    if np.abs(deq - expected).max() > tol.residual_tol:
        return None
    return _fix_column_phases(psi)


def classify(
    s: Scheme,
    tol: ToleranceConfig = DEFAULT_TOL,
    basis: VectorizationBasis | None = None,
) -> SchemeReport:
    """Full scheme report: cardinality, rank, conditioning, and diagnostics.

    Diagnostics that need quantizers use the attached family when present and
    the canonical one otherwise (tomographic schemes only).
    """
    basis = _default_basis(s, basis)
    u_mat = dequantization_matrix(s, basis)
    d_sq = s.d * s.d
    n = s.n_points
    sv = singular_values(u_mat)
    rk = int(np.count_nonzero(sv > tol.rank_tol * sv[0])) if sv[0] > 0 else 0
    tomographic = rk == d_sq
    if n < d_sq:
        cardinality: Cardinality = "underfilled"
    elif n == d_sq:
        cardinality = "minimal"
    else:
        cardinality = "overfilled"
    condition_number = float(sv[0] / sv[d_sq - 1]) if tomographic else float("inf")

    diagnostic = s
    if s.quantizers is None and tomographic:
        diagnostic = s.with_quantizers(canonical_quantizers(s, tol))
    self_dual = (
        self_dual_coefficient(diagnostic, tol) if diagnostic.quantizers is not None else None
    )
    scaled_unitary = scaled_unitary_check(u_mat, tol) if n == d_sq else None
    try:
        negativity = negativity_report(diagnostic, tol)
    except NonHermitianMemberError:
        negativity = None
    return SchemeReport(
        cardinality=cardinality,
        tomographic=tomographic,
        rank=rk,
        condition_number=condition_number,
        self_dual_coefficient=self_dual,
        scaled_unitary=scaled_unitary,
        povm=povm_check(s, tol),
        negativity=negativity,
        matrix_unit_like=matrix_unit_like_detect(s, tol) if n == d_sq else None,
    )
