"""Structural verification battery.

Each check pins its tolerances, runs one acceptance-grade property
(table regression, symmetric-overlap conditions, the self-duality and
POVM-incompatibility statements, completeness/round-trip, kernel laws,
intertwining, the cubic unitary identity, the MUB frame), and reports its
residuals.  The CLI ``verify`` command and the acceptance test suite both
drive these functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .catalog import (
    default_fiducial,
    entries,
    livine_scheme,
    mub_qubit_scheme,
    pauli_scheme,
    random_minimal_povm_scheme,
    sic_qubit_scheme,
    table_regression_set,
    matrix_units_scheme,
    wh_sic_scheme,
)
from .matrixcore import DEFAULT_TOL, ToleranceConfig, hermitian_eig, singular_values
from .operator_space import VectorizationBasis, hs_inner
from .scheme import (
    canonical_quantizers,
    classify,
    completeness_residual,
    dequantization_matrix,
    duality_matrix,
    negativity_report,
    scaled_unitary_check,
    scheme_from_dequantization_matrix,
    self_dual_coefficient,
    with_canonical_quantizers,
)
from .star_product import (
    associativity_residual,
    cubic_unitary_residual,
    intertwiner,
    reconstruct,
    star_kernel,
    star_multiply,
    symbol,
)

DEFAULT_BATTERY_SEED = 20100231


@dataclass
class CheckResult:
    """Outcome of one verification check with its residuals."""

    name: str
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_operator(d: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def check_table_printed_rows() -> CheckResult:
    """Rows 1-3: generated matrices match the printed ones in both bases."""
    worst = 0.0
    for row in table_regression_set()[:3]:
        worst = max(
            worst,
            float(np.abs(row.generated_rowstacking - row.expected_rowstacking).max()),
            float(np.abs(row.generated_pauli - row.expected_pauli).max()),
        )
    return CheckResult(
        name="table-rows-1-3",
        passed=worst <= 1e-12,
        details={"max_residual": worst, "tolerance": 1e-12},
    )


def check_table_derived_rows() -> CheckResult:
    """Rows 4-6: generated matrices match the derived expectations; errata present."""
    worst = 0.0
    errata: list[str] = []
    for row in table_regression_set()[3:]:
        worst = max(
            worst,
            float(np.abs(row.generated_rowstacking - row.expected_rowstacking).max()),
            float(np.abs(row.generated_pauli - row.expected_pauli).max()),
        )
        errata.extend(f"row {e.row} [{e.block}]: {e.description}" for e in row.errata)
    rows_flagged = {e.row for r in table_regression_set()[3:] for e in r.errata}
    return CheckResult(
        name="table-rows-4-6",
        passed=worst <= 1e-12 and rows_flagged == {4, 5, 6},
        details={
            "max_residual": worst,
            "tolerance": 1e-12,
            "errata": errata,
            "rows_flagged": sorted(rows_flagged),
        },
    )


def check_sic_conditions(tol: ToleranceConfig = DEFAULT_TOL) -> CheckResult:
    """Symmetric overlap conditions at d = 2 and d = 3."""
    projs = sic_qubit_scheme("projector").dequantizers
    gram = np.einsum("kab,lab->kl", projs.conj(), projs).real
    target = (2 * np.eye(4) + 1) / 3
    qubit_gram_res = float(np.abs(gram - target).max())

    effects = sic_qubit_scheme("povm").dequantizers
    egram = np.einsum("kab,lab->kl", effects.conj(), effects)
    off = egram[~np.eye(4, dtype=bool)]
    qubit_effect_res = float(np.abs(off - 1 / 12).max())

    qutrit = wh_sic_scheme(3, default_fiducial(3), tol).dequantizers
    qgram = np.einsum("kab,lab->kl", qutrit.conj(), qutrit).real
    qtarget = (3 * np.eye(9) + 1) / 4
    qutrit_gram_res = float(np.abs(qgram - qtarget).max())

    return CheckResult(
        name="sic-overlap-conditions",
        passed=qubit_gram_res <= 1e-12 and qubit_effect_res <= 1e-12 and qutrit_gram_res <= 1e-9,
        details={
            "qubit_projector_gram_residual": qubit_gram_res,
            "qubit_effect_gram_residual": qubit_effect_res,
            "qutrit_gram_residual": qutrit_gram_res,
            "tolerances": {"qubit": 1e-12, "qutrit": 1e-9},
        },
    )


def check_livine_positivity(tol: ToleranceConfig = DEFAULT_TOL) -> CheckResult:
    """The concrete self-dual scheme: c = 1/2, known spectrum, resolves the
    identity, yet fails positivity (no minimal self-dual scheme is a POVM)."""
    s = livine_scheme("dequantizer")
    c = self_dual_coefficient(s, tol)
    c_res = abs((c if c is not None else np.nan) - 0.5)
    eigs, _ = hermitian_eig(s.dequantizers[0], tol)
    expected = np.array([(1 - np.sqrt(3)) / 4, (1 + np.sqrt(3)) / 4])
    eig_res = float(np.abs(eigs - expected).max())
    sum_res = float(np.abs(s.dequantizers.sum(axis=0) - np.eye(2)).max())
    min_eig = negativity_report(s, tol).min_dequantizer_eigenvalue
    passed = (
        c is not None
        and c_res <= 1e-12
        and eig_res <= 1e-12
        and sum_res <= 1e-12
        and min_eig < -tol.eig_tol
    )
    return CheckResult(
        name="livine-self-dual-not-povm",
        passed=bool(passed),
        details={
            "self_dual_coefficient": c,
            "coefficient_residual": c_res,
            "eigenvalue_residual": eig_res,
            "identity_sum_residual": sum_res,
            "min_dequantizer_eigenvalue": min_eig,
            "tolerance": 1e-12,
        },
    )


def check_self_duality_unitarity(
    seed: int = DEFAULT_BATTERY_SEED, samples: int = 100, tol: ToleranceConfig = DEFAULT_TOL
) -> CheckResult:
    """Self-dual <=> scaled-unitary, both directions, at d = 2 and d = 3."""
    rng = np.random.default_rng(seed)
    worst_forward = 0.0
    for d in (2, 3):
        basis = VectorizationBasis.row_stacking(d)
        for _ in range(samples):
            c = rng.uniform(0.1, 10.0)
            u_mat = np.sqrt(c) * haar_unitary(d * d, rng)
            s = scheme_from_dequantization_matrix(u_mat, basis)
            s = s.with_quantizers(canonical_quantizers(s, tol))
            recovered = self_dual_coefficient(s, tol)
            if recovered is None:
                worst_forward = np.inf
                break
            worst_forward = max(worst_forward, abs(recovered - c) / c)

    worst_backward = 0.0
    checked = []
    for entry in entries(tol):
        s = with_canonical_quantizers(entry.scheme, tol)
        c = self_dual_coefficient(s, tol)
        if c is None:
            continue
        u_mat = dequantization_matrix(s)
        c_gram = scaled_unitary_check(u_mat, tol)
        if c_gram is None:
            worst_backward = np.inf
            break
        worst_backward = max(worst_backward, abs(c_gram - c) / c)
        checked.append(entry.name)

    passed = worst_forward <= 1e-9 and worst_backward <= 1e-9 and len(checked) > 0
    return CheckResult(
        name="self-dual-scaled-unitary",
        passed=bool(passed),
        details={
            "random_coefficient_worst_relative_error": worst_forward,
            "catalog_gram_worst_relative_error": worst_backward,
            "self_dual_catalog_schemes": checked,
            "samples_per_dimension": samples,
            "tolerance": 1e-9,
        },
    )


def check_povm_dual_negativity(
    seeds: int = 1000, d: int = 2, tol: ToleranceConfig = DEFAULT_TOL
) -> CheckResult:
    """Random minimal POVM schemes always have a negative dual eigenvalue."""
    conclusive = 0
    inconclusive = 0
    counterexamples = 0
    worst_min = -np.inf
    guard = 1e-10
    for seed in range(seeds):
        s = random_minimal_povm_scheme(d, seed, tol)
        qs = canonical_quantizers(s, tol)
        # Eigenvalues of the Hermitian parts: the exact dual of a Hermitian
        # family is Hermitian, but inversion noise scales with conditioning
        # and the guard below absorbs it.
        herm = (qs + qs.conj().transpose(0, 2, 1)) / 2
        min_eig = float(np.linalg.eigvalsh(herm)[:, 0].min())
        worst_min = max(worst_min, min_eig)
        if min_eig <= -guard:
            conclusive += 1
        elif min_eig < guard:
            inconclusive += 1
        else:
            counterexamples += 1
    passed = counterexamples == 0 and conclusive >= 0.99 * seeds
    return CheckResult(
        name="povm-dual-negativity",
        passed=bool(passed),
        details={
            "seeds": seeds,
            "conclusive": conclusive,
            "inconclusive": inconclusive,
            "counterexamples": counterexamples,
            "largest_min_quantizer_eigenvalue": worst_min,
            "guard": guard,
        },
    )


def check_completeness_roundtrip(
    seed: int = DEFAULT_BATTERY_SEED, samples: int = 100, tol: ToleranceConfig = DEFAULT_TOL
) -> CheckResult:
    """Completeness of the dual pair and symbol/reconstruct round trip."""
    rng = np.random.default_rng(seed)
    worst_complete = 0.0
    worst_roundtrip = 0.0
    for entry in entries(tol):
        s = with_canonical_quantizers(entry.scheme, tol)
        worst_complete = max(worst_complete, completeness_residual(s))
        for _ in range(samples):
            a = random_operator(s.d, rng)
            worst_roundtrip = max(
                worst_roundtrip, float(np.abs(reconstruct(s, symbol(s, a)) - a).max())
            )
    passed = worst_complete <= 1e-10 and worst_roundtrip <= 1e-10
    return CheckResult(
        name="completeness-roundtrip",
        passed=bool(passed),
        details={
            "worst_completeness_residual": worst_complete,
            "worst_roundtrip_residual": worst_roundtrip,
            "operators_per_scheme": samples,
            "tolerance": 1e-10,
        },
    )


def check_kernel_laws(
    seed: int = DEFAULT_BATTERY_SEED, pairs: int = 50, tol: ToleranceConfig = DEFAULT_TOL
) -> CheckResult:
    """Kernel homomorphism against operator products and exhaustive associativity."""
    rng = np.random.default_rng(seed)
    worst_hom = 0.0
    worst_assoc = 0.0
    for entry in entries(tol):
        s = with_canonical_quantizers(entry.scheme, tol)
        kernel = star_kernel(s)
        worst_assoc = max(worst_assoc, associativity_residual(kernel))
        for _ in range(pairs):
            a = random_operator(s.d, rng)
            b = random_operator(s.d, rng)
            via_kernel = star_multiply(kernel, symbol(s, a), symbol(s, b))
            direct = symbol(s, a @ b)
            worst_hom = max(worst_hom, float(np.abs(via_kernel - direct).max()))
    passed = worst_hom <= 1e-9 and worst_assoc <= 1e-10
    return CheckResult(
        name="kernel-homomorphism-associativity",
        passed=bool(passed),
        details={
            "worst_homomorphism_residual": worst_hom,
            "worst_associativity_residual": worst_assoc,
            "pairs_per_scheme": pairs,
            "tolerances": {"homomorphism": 1e-9, "associativity": 1e-10},
        },
    )


def check_intertwining(
    seed: int = DEFAULT_BATTERY_SEED, samples: int = 100, tol: ToleranceConfig = DEFAULT_TOL
) -> CheckResult:
    """Minimal-to-minimal kernels compose to the identity; overfilled round trip."""
    rng = np.random.default_rng(seed)
    mu = matrix_units_scheme(2)
    pauli = pauli_scheme("hermitian")
    pair = intertwiner(mu, pauli, tol)
    compose_res = max(
        float(np.abs(pair.backward @ pair.forward - np.eye(4)).max()),
        float(np.abs(pair.forward @ pair.backward - np.eye(4)).max()),
    )

    mub = with_canonical_quantizers(mub_qubit_scheme(), tol)
    pair2 = intertwiner(pauli, mub, tol)
    worst_roundtrip = 0.0
    for _ in range(samples):
        a = random_operator(2, rng)
        f = symbol(pauli, a)
        back = pair2.backward @ (pair2.forward @ f)
        worst_roundtrip = max(worst_roundtrip, float(np.abs(back - f).max()))
    passed = compose_res <= 1e-12 and worst_roundtrip <= 1e-10
    return CheckResult(
        name="intertwining",
        passed=bool(passed),
        details={
            "minimal_composition_residual": compose_res,
            "overfilled_roundtrip_residual": worst_roundtrip,
            "operators": samples,
            "tolerances": {"composition": 1e-12, "roundtrip": 1e-10},
        },
    )


def check_cubic_identity(
    seed: int = DEFAULT_BATTERY_SEED, samples: int = 100, tol: ToleranceConfig = DEFAULT_TOL
) -> CheckResult:
    """u = (u u*) u^tr over random unitaries of sizes 4 and 9."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for dim in (4, 9):
        for _ in range(samples):
            worst = max(worst, cubic_unitary_residual(haar_unitary(dim, rng), tol))
    passed = worst <= 1e-12
    return CheckResult(
        name="cubic-unitary-identity",
        passed=bool(passed),
        details={"worst_residual": worst, "samples_per_size": samples, "tolerance": 1e-12},
    )


def check_mub_frame(tol: ToleranceConfig = DEFAULT_TOL) -> CheckResult:
    """Qubit MUB frame: singular values, duality projector, condition number."""
    mub = mub_qubit_scheme()
    sv = singular_values(dequantization_matrix(mub))
    sv_res = float(np.abs(sv - np.array([np.sqrt(3), 1, 1, 1])).max())
    s = with_canonical_quantizers(mub, tol)
    delta = duality_matrix(s)
    herm_res = float(np.abs(delta - delta.conj().T).max())
    idem_res = float(np.abs(delta @ delta - delta).max())
    trace_res = abs(complex(np.trace(delta)) - 4.0)
    cond = classify(mub, tol).condition_number
    cond_res = abs(cond - np.sqrt(3))
    passed = all(r <= 1e-10 for r in (sv_res, herm_res, idem_res, trace_res, cond_res))
    return CheckResult(
        name="mub-frame",
        passed=bool(passed),
        details={
            "singular_value_residual": sv_res,
            "duality_hermiticity_residual": herm_res,
            "duality_idempotency_residual": idem_res,
            "duality_trace_residual": trace_res,
            "condition_number": cond,
            "condition_number_residual": cond_res,
            "tolerance": 1e-10,
        },
    )


SUITES = {
    "table": ("table-rows-1-3", "table-rows-4-6"),
    "propositions": (
        "livine-self-dual-not-povm",
        "self-dual-scaled-unitary",
        "povm-dual-negativity",
    ),
    "random-povm": ("povm-dual-negativity",),
}


def run_battery(
    suite: str = "all",
    seeds: int = 1000,
    seed: int = DEFAULT_BATTERY_SEED,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> list[CheckResult]:
    """Run the requested verification suite and return per-check results."""
    all_checks = {
        "table-rows-1-3": check_table_printed_rows,
        "table-rows-4-6": check_table_derived_rows,
        "sic-overlap-conditions": lambda: check_sic_conditions(tol),
        "livine-self-dual-not-povm": lambda: check_livine_positivity(tol),
        "self-dual-scaled-unitary": lambda: check_self_duality_unitarity(seed, tol=tol),
        "povm-dual-negativity": lambda: check_povm_dual_negativity(seeds, tol=tol),
        "completeness-roundtrip": lambda: check_completeness_roundtrip(seed, tol=tol),
        "kernel-homomorphism-associativity": lambda: check_kernel_laws(seed, tol=tol),
        "intertwining": lambda: check_intertwining(seed, tol=tol),
        "cubic-unitary-identity": lambda: check_cubic_identity(seed, tol=tol),
        "mub-frame": lambda: check_mub_frame(tol),
    }
    if suite == "all":
        names = tuple(all_checks)
    else:
        try:
            names = SUITES[suite]
        except KeyError:
            raise ValueError(f"unknown suite {suite!r}; choose all, " + ", ".join(SUITES))
    return [all_checks[name]() for name in names]
