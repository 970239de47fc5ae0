"""Built-in scheme constructors and regression data.

Covers the standard qubit families (matrix units, scaled Paulis, the Livine
phase-space quartet, the tetrahedral SIC, the full MUB set), generators for
Weyl-Heisenberg SIC orbits and prime-dimension MUBs, a seeded random-POVM
sampler, and the printed-table regression set with its errata.
"""

from __future__ import annotations

import importlib.resources
import json
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import NotPrimeError, NotSICError, SamplerFailureError
from .matrixcore import DEFAULT_TOL, ToleranceConfig, rank
from .operator_space import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    VectorizationBasis,
    matrix_unit,
    pauli_basis,
)
from .scheme import Scheme, dequantization_matrix, quantization_matrix

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)


def matrix_units_scheme(d: int) -> Scheme:
    """All d^2 matrix units, ordered k = d(i-1)+j; self-dual with c = 1."""
    deq = np.stack([matrix_unit(d, i, j) for i in range(1, d + 1) for j in range(1, d + 1)])
    return Scheme(dequantizers=deq, quantizers=deq, name=f"matrix-units-d{d}")


def pauli_scheme(variant: str = "hermitian") -> Scheme:
    """Qubit scheme over (I, sx, sy, sz)/sqrt(2); the alternate variant swaps
    sy for i*sy, keeping the family trace-orthonormal but not Hermitian."""
    if variant not in ("hermitian", "with_i_sigma_y"):
        raise ValueError(f"unknown pauli scheme variant {variant!r}")
    sy = 1j * PAULI_Y if variant == "with_i_sigma_y" else PAULI_Y
    deq = np.stack([np.eye(2, dtype=complex), PAULI_X, sy, PAULI_Z]) / SQRT2
    name = "pauli" if variant == "hermitian" else "pauli-isy"
    return Scheme(dequantizers=deq, quantizers=deq, name=name)


_LIVINE_SIGNS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))


def livine_scheme(normalization: str = "dequantizer") -> Scheme:
    """Qubit phase-space quartet (I +/- sx +/- sy +/- sz)/4, self-dual with c = 1/2.

    ``normalization="dequantizer"`` keeps quantizers at twice the
    dequantizers; ``"self_dual_normalized"`` rescales both families to
    coincide (sqrt(2) times the dequantizers).
    """
    if normalization not in ("dequantizer", "self_dual_normalized"):
        raise ValueError(f"unknown livine normalization {normalization!r}")
    deq = np.stack(
        [
            (np.eye(2, dtype=complex) + a * PAULI_X + b * PAULI_Y + c * PAULI_Z) / 4
            for a, b, c in _LIVINE_SIGNS
        ]
    )
    if normalization == "dequantizer":
        return Scheme(dequantizers=deq, quantizers=2 * deq, name="livine")
    scaled = SQRT2 * deq
    return Scheme(dequantizers=scaled, quantizers=scaled, name="livine-normalized")


_TETRAHEDRON = np.array(
    [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)], dtype=float
) / SQRT3


def _bloch_projector(n: np.ndarray) -> np.ndarray:
    return (np.eye(2, dtype=complex) + n[0] * PAULI_X + n[1] * PAULI_Y + n[2] * PAULI_Z) / 2


def sic_qubit_scheme(normalization: str = "projector") -> Scheme:
    """Tetrahedral qubit SIC: four rank-1 projectors with pairwise trace 1/3.

    ``normalization="povm"`` halves the projectors so the family sums to the
    identity.
    """
    if normalization not in ("projector", "povm"):
        raise ValueError(f"unknown sic normalization {normalization!r}")
    projs = np.stack([_bloch_projector(n) for n in _TETRAHEDRON])
    if normalization == "povm":
        return Scheme(dequantizers=projs / 2, name="sic-qubit-povm")
    return Scheme(dequantizers=projs, name="sic-qubit")


def mub_qubit_scheme() -> Scheme:
    """Six projectors onto the sz, sx, sy eigenbases, plus vector before minus."""
    z0 = np.array([1, 0], dtype=complex)
    z1 = np.array([0, 1], dtype=complex)
    xp = np.array([1, 1], dtype=complex) / SQRT2
    xm = np.array([1, -1], dtype=complex) / SQRT2
    yp = np.array([1, 1j], dtype=complex) / SQRT2
    ym = np.array([1, -1j], dtype=complex) / SQRT2
    deq = np.stack([np.outer(v, v.conj()) for v in (z0, z1, xp, xm, yp, ym)])
    return Scheme(dequantizers=deq, name="mub-qubit")


def clock_matrix(d: int) -> np.ndarray:
    """diag(1, w, ..., w^(d-1)) with w = exp(2 pi i / d)."""
    omega = np.exp(2j * np.pi / d)
    return np.diag(omega ** np.arange(d))


def shift_matrix(d: int) -> np.ndarray:
    """Cyclic shift X e_j = e_(j+1 mod d)."""
    x = np.zeros((d, d), dtype=complex)
    for j in range(d):
        x[(j + 1) % d, j] = 1.0
    return x


def default_fiducial(d: int) -> np.ndarray:
    """Shipped SIC fiducial for d = 2 (tetrahedron axis) or d = 3 (package data)."""
    if d == 2:
        theta = np.arccos(1 / SQRT3)
        return np.array([np.cos(theta / 2), np.exp(1j * np.pi / 4) * np.sin(theta / 2)])
    if d == 3:
        payload = json.loads(
            importlib.resources.files("starprod")
            .joinpath("data/sic_fiducial_d3.json")
            .read_text()
        )
        return np.array([complex(re, im) for re, im in payload["values"]])
    raise ValueError(f"no fiducial shipped for d={d}")


def wh_sic_scheme(d: int, fiducial, tol: ToleranceConfig = DEFAULT_TOL) -> Scheme:
    """Projector scheme over the clock/shift orbit of a fiducial vector.

    The d^2 states X^a Z^b |fiducial> are indexed k = d*a + b + 1.  The
    pairwise projector overlaps must equal (d delta + 1)/(d + 1); otherwise
    the fiducial is not SIC and NotSICError is raised.
    """
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    psi = np.asarray(fiducial, dtype=complex).reshape(-1)
    if psi.size != d:
        raise ValueError(f"fiducial length {psi.size} does not match d={d}")
    if abs(np.linalg.norm(psi) - 1.0) > tol.residual_tol:
        raise ValueError("fiducial vector is not normalized")
    z = clock_matrix(d)
    x = shift_matrix(d)
    states = [
        np.linalg.matrix_power(x, a) @ np.linalg.matrix_power(z, b) @ psi
        for a in range(d)
        for b in range(d)
    ]
    projs = np.stack([np.outer(v, v.conj()) for v in states])
    gram = np.abs(np.array([[v.conj() @ w for w in states] for v in states])) ** 2
    target = (d * np.eye(d * d) + 1) / (d + 1)
    deviation = float(np.abs(gram - target).max())
    if deviation > tol.residual_tol:
        raise NotSICError(
            f"orbit overlaps deviate from (d*delta+1)/(d+1) by {deviation:.3e}"
        )
    return Scheme(dequantizers=projs, name=f"wh-sic-d{d}")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


def mub_prime_scheme(p: int) -> Scheme:
    """p(p+1) rank-1 projectors from a full set of mutually unbiased bases.

    Computational basis first, then the p quadratic-phase bases
    <e_m|a,alpha> = w^(a m^2 + alpha m)/sqrt(p) for odd p; for p = 2 the
    sx and sy eigenbases, matching the qubit MUB scheme exactly.
    """
    if not _is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p == 2:
        return Scheme(dequantizers=mub_qubit_scheme().dequantizers, name="mub-prime-2")
    omega = np.exp(2j * np.pi / p)
    m = np.arange(p)
    vectors = [np.eye(p, dtype=complex)[:, alpha] for alpha in range(p)]
    for a in range(1, p + 1):
        for alpha in range(p):
            vectors.append(omega ** ((a * m * m + alpha * m) % p) / np.sqrt(p))
    deq = np.stack([np.outer(v, v.conj()) for v in vectors])
    return Scheme(dequantizers=deq, name=f"mub-prime-{p}")


def random_minimal_povm_scheme(
    d: int, seed: int, tol: ToleranceConfig = DEFAULT_TOL, max_attempts: int = 100
) -> Scheme:
    """Seeded random minimal tomographic POVM: d^2 Wishart effects,
    symmetrically normalized so they sum to the identity exactly.

    Resamples until the dequantization matrix has full rank; raises
    SamplerFailureError after ``max_attempts``.
    """
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        g = (
            rng.standard_normal((d * d, d, d)) + 1j * rng.standard_normal((d * d, d, d))
        ) / SQRT2
        effects = np.einsum("kab,kcb->kac", g, g.conj())
        total = effects.sum(axis=0)
        eigenvalues, vectors = np.linalg.eigh(total)
        inv_sqrt = (vectors * (1 / np.sqrt(eigenvalues))) @ vectors.conj().T
        deq = np.einsum("ab,kbc,cd->kad", inv_sqrt, effects, inv_sqrt)
        s = Scheme(dequantizers=deq, name=f"random-povm-d{d}-seed{seed}")
        if rank(dequantization_matrix(s), tol) == d * d:
            return s
    raise SamplerFailureError(
        f"no full-rank POVM found in {max_attempts} attempts (d={d}, seed={seed})"
    )


@dataclass(frozen=True)
class CatalogEntry:
    """Named scheme with the report fragments its classification must reproduce."""

    name: str
    scheme: Scheme
    expected: dict[str, Any]


def entries(tol: ToleranceConfig = DEFAULT_TOL) -> list[CatalogEntry]:
    """The standard regression set: every built-in scheme at its stock parameters."""
    sqrt3 = float(SQRT3)
    return [
        CatalogEntry(
            "matrix-units-d2",
            matrix_units_scheme(2),
            {
                "cardinality": "minimal",
                "tomographic": True,
                "rank": 4,
                "condition_number": 1.0,
                "self_dual_coefficient": 1.0,
                "scaled_unitary": 1.0,
                "is_povm": False,
            },
        ),
        CatalogEntry(
            "matrix-units-d3",
            matrix_units_scheme(3),
            {
                "cardinality": "minimal",
                "tomographic": True,
                "rank": 9,
                "condition_number": 1.0,
                "self_dual_coefficient": 1.0,
                "scaled_unitary": 1.0,
                "is_povm": False,
            },
        ),
        CatalogEntry(
            "pauli",
            pauli_scheme("hermitian"),
            {
                "cardinality": "minimal",
                "tomographic": True,
                "rank": 4,
                "condition_number": 1.0,
                "self_dual_coefficient": 1.0,
                "scaled_unitary": 1.0,
                "is_povm": False,
            },
        ),
        CatalogEntry(
            "pauli-isy",
            pauli_scheme("with_i_sigma_y"),
            {
                "cardinality": "minimal",
                "tomographic": True,
                "rank": 4,
                "condition_number": 1.0,
                "self_dual_coefficient": 1.0,
                "scaled_unitary": 1.0,
                "is_povm": False,
            },
        ),
        CatalogEntry(
            "livine",
            livine_scheme("dequantizer"),
            {
                "cardinality": "minimal",
                "tomographic": True,
                "rank": 4,
                "condition_number": 1.0,
                "self_dual_coefficient": 0.5,
                "scaled_unitary": 0.5,
                "is_povm": False,
                "min_dequantizer_eigenvalue": (1 - sqrt3) / 4,
            },
        ),
        CatalogEntry(
            "livine-normalized",
            livine_scheme("self_dual_normalized"),
            {
                "cardinality": "minimal",
                "tomographic": True,
                "rank": 4,
                "condition_number": 1.0,
                "self_dual_coefficient": 1.0,
                "scaled_unitary": 1.0,
                "is_povm": False,
            },
        ),
        CatalogEntry(
            "sic-qubit",
            sic_qubit_scheme("projector"),
            {
                "cardinality": "minimal",
                "tomographic": True,
                "rank": 4,
                "condition_number": sqrt3,
                "self_dual_coefficient": None,
                "scaled_unitary": None,
                "is_povm": False,
                "min_dequantizer_eigenvalue": 0.0,
                "min_quantizer_eigenvalue": -0.5,
            },
        ),
        CatalogEntry(
            "sic-qubit-povm",
            sic_qubit_scheme("povm"),
            {
                "cardinality": "minimal",
                "tomographic": True,
                "rank": 4,
                "condition_number": sqrt3,
                "self_dual_coefficient": None,
                "scaled_unitary": None,
                "is_povm": True,
                "min_dequantizer_eigenvalue": 0.0,
                "min_quantizer_eigenvalue": -1.0,
            },
        ),
        CatalogEntry(
            "mub-qubit",
            mub_qubit_scheme(),
            {
                "cardinality": "overfilled",
                "tomographic": True,
                "rank": 4,
                "condition_number": sqrt3,
                "is_povm": False,
                "min_dequantizer_eigenvalue": 0.0,
            },
        ),
        CatalogEntry(
            "wh-sic-d2",
            wh_sic_scheme(2, default_fiducial(2), tol),
            {
                "cardinality": "minimal",
                "tomographic": True,
                "rank": 4,
                "condition_number": sqrt3,
                "is_povm": False,
            },
        ),
        CatalogEntry(
            "wh-sic-d3",
            wh_sic_scheme(3, default_fiducial(3), tol),
            {
                "cardinality": "minimal",
                "tomographic": True,
                "rank": 9,
                "condition_number": 2.0,
                "is_povm": False,
            },
        ),
        CatalogEntry(
            "mub-prime-3",
            mub_prime_scheme(3),
            {
                "cardinality": "overfilled",
                "tomographic": True,
                "rank": 9,
                "condition_number": 2.0,
                "is_povm": False,
            },
        ),
    ]


@dataclass(frozen=True)
class TableErratum:
    """One normalization/order deviation of the printed reference table."""

    row: int
    block: str
    description: str


@dataclass(frozen=True)
class TableRow:
    """Regression row: generated matrices against frozen expectations.

    Rows whose printed form deviates from the consistent vectorization carry
    errata; their expectations are the derived matrices.
    """

    row: int
    name: str
    entry: CatalogEntry
    generated_rowstacking: np.ndarray
    generated_pauli: np.ndarray
    expected_rowstacking: np.ndarray
    expected_pauli: np.ndarray
    errata: tuple[TableErratum, ...]


def _entry(name: str, scheme: Scheme) -> CatalogEntry:
    return CatalogEntry(name=name, scheme=scheme, expected={})


def table_regression_set() -> list[TableRow]:
    """The six-row qubit table: generated dequantization matrices in both bases.

    Rows 1-3 expectations are the printed matrices verbatim.  Rows 4-6
    expectations are the derived vectorizations, with the printed deviations
    recorded as errata; row 4 pairs the quantizer matrix (row stacking) with
    the self-dual-normalized family (orthonormal basis), which is what the
    printed blocks actually show.
    """
    rs = VectorizationBasis.row_stacking(2)
    pb = pauli_basis()
    s2 = SQRT2
    s3 = SQRT3
    rows: list[TableRow] = []

    mu = matrix_units_scheme(2)
    rows.append(
        TableRow(
            row=1,
            name="matrix-units",
            entry=_entry("matrix-units", mu),
            generated_rowstacking=dequantization_matrix(mu, rs),
            generated_pauli=dequantization_matrix(mu, pb),
            expected_rowstacking=np.eye(4, dtype=complex),
            expected_pauli=np.array(
                [[1, 0, 0, 1], [0, 1, 1, 0], [0, 1j, -1j, 0], [1, 0, 0, -1]], dtype=complex
            )
            / s2,
            errata=(),
        )
    )

    pl = pauli_scheme("hermitian")
    rows.append(
        TableRow(
            row=2,
            name="pauli",
            entry=_entry("pauli", pl),
            generated_rowstacking=dequantization_matrix(pl, rs),
            generated_pauli=dequantization_matrix(pl, pb),
            expected_rowstacking=np.array(
                [[1, 0, 0, 1], [0, 1, -1j, 0], [0, 1, 1j, 0], [1, 0, 0, -1]], dtype=complex
            )
            / s2,
            expected_pauli=np.eye(4, dtype=complex),
            errata=(),
        )
    )

    ply = pauli_scheme("with_i_sigma_y")
    rows.append(
        TableRow(
            row=3,
            name="pauli-isy",
            entry=_entry("pauli-isy", ply),
            generated_rowstacking=dequantization_matrix(ply, rs),
            generated_pauli=dequantization_matrix(ply, pb),
            expected_rowstacking=np.array(
                [[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, -1, 0], [1, 0, 0, -1]], dtype=complex
            )
            / s2,
            expected_pauli=np.diag([1, 1, 1j, 1]).astype(complex),
            errata=(),
        )
    )

    liv = livine_scheme("dequantizer")
    liv_norm = livine_scheme("self_dual_normalized")
    rows.append(
        TableRow(
            row=4,
            name="livine",
            entry=_entry("livine", liv),
            generated_rowstacking=quantization_matrix(liv, rs),
            generated_pauli=dequantization_matrix(liv_norm, pb),
            expected_rowstacking=np.array(
                [
                    [2, 0, 0, 2],
                    [1 - 1j, 1 + 1j, -1 - 1j, -1 + 1j],
                    [1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j],
                    [0, 2, 2, 0],
                ],
                dtype=complex,
            )
            / 2,
            expected_pauli=np.array(
                [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]],
                dtype=complex,
            )
            / 2,
            errata=(
                TableErratum(
                    4,
                    "both",
                    "printed blocks mix normalizations of one scheme: the left block "
                    "is the vectorized quantizer family (2x the dequantizers), the "
                    "right block the self-dual-normalized family (sqrt(2)x)",
                ),
            ),
        )
    )

    sic = sic_qubit_scheme("projector")
    rows.append(
        TableRow(
            row=5,
            name="sic-qubit",
            entry=_entry("sic-qubit", sic),
            generated_rowstacking=dequantization_matrix(sic, rs),
            generated_pauli=dequantization_matrix(sic, pb),
            expected_rowstacking=np.array(
                [
                    [s3 + 1, s3 - 1, s3 - 1, s3 + 1],
                    [1 - 1j, 1 + 1j, -1 - 1j, -1 + 1j],
                    [1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j],
                    [s3 - 1, s3 + 1, s3 + 1, s3 - 1],
                ],
                dtype=complex,
            )
            / (2 * s3),
            expected_pauli=np.array(
                [[s3, s3, s3, s3], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]],
                dtype=complex,
            )
            / np.sqrt(6),
            errata=(
                TableErratum(
                    5,
                    "pauli",
                    "printed right block is 1/sqrt(2) times the orthonormal-basis "
                    "vectorization of the projectors",
                ),
            ),
        )
    )

    mub = mub_qubit_scheme()
    rows.append(
        TableRow(
            row=6,
            name="mub-qubit",
            entry=_entry("mub-qubit", mub),
            generated_rowstacking=dequantization_matrix(mub, rs),
            generated_pauli=dequantization_matrix(mub, pb),
            expected_rowstacking=np.array(
                [
                    [2, 0, 1, 1, 1, 1],
                    [0, 0, 1, -1, -1j, 1j],
                    [0, 0, 1, -1, 1j, -1j],
                    [0, 2, 1, 1, 1, 1],
                ],
                dtype=complex,
            )
            / 2,
            expected_pauli=np.array(
                [
                    [1, 1, 1, 1, 1, 1],
                    [0, 0, 1, -1, 0, 0],
                    [0, 0, 0, 0, 1, -1],
                    [1, -1, 0, 0, 0, 0],
                ],
                dtype=complex,
            )
            / s2,
            errata=(
                TableErratum(
                    6,
                    "rowstacking",
                    "printed columns 3-6 carry an extra sqrt(2) relative to the "
                    "projector vectorization",
                ),
                TableErratum(
                    6,
                    "both",
                    "printed sigma_y columns appear in (minus, plus) order; "
                    "normalized here to (plus, minus)",
                ),
                TableErratum(
                    6,
                    "pauli",
                    "printed right block scales columns 1-2 by 1/sqrt(2) and "
                    "columns 3-6 by 1/2 relative to the projector vectorization",
                ),
            ),
        )
    )
    return rows
