import numpy as np
import pytest

from starprod import (
    DimensionMismatchError,
    LengthMismatchError,
    MissingQuantizersError,
    NotTomographicError,
    NotUnitaryError,
    Scheme,
    associativity_residual,
    cubic_unitary_residual,
    dequantization_matrix,
    intertwiner,
    reconstruct,
    star_kernel,
    star_multiply,
    symbol,
    with_canonical_quantizers,
)
from starprod.catalog import (
    livine_scheme,
    matrix_units_scheme,
    mub_qubit_scheme,
    pauli_scheme,
    sic_qubit_scheme,
)

from _helpers import haar_unitary, random_complex, random_hermitian


class TestSymbol:
    def test_matrix_units_symbol_is_row_stacking(self, rng):
        s = matrix_units_scheme(2)
        assert np.array_equal(
            symbol(s, np.array([[1, 0], [0, 0]])), np.array([1, 0, 0, 0], dtype=complex)
        )
        a = random_complex(rng, (2, 2))
        assert np.abs(symbol(s, a) - a.reshape(-1)).max() <= 1e-14

    def test_sic_maximally_mixed(self):
        f = symbol(sic_qubit_scheme("povm"), np.eye(2) / 2)
        assert np.abs(f - 0.25).max() <= 1e-14

    def test_livine_identity(self):
        f = symbol(livine_scheme(), np.eye(2))
        assert np.abs(f - 0.5).max() <= 1e-14

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            symbol(matrix_units_scheme(2), np.eye(3))


class TestReconstruct:
    def test_matrix_units(self):
        a = reconstruct(matrix_units_scheme(2), [1, 0, 0, 0])
        assert np.array_equal(a, np.array([[1, 0], [0, 0]], dtype=complex))

    def test_sic_maximally_mixed(self):
        s = with_canonical_quantizers(sic_qubit_scheme("povm"))
        a = reconstruct(s, [0.25, 0.25, 0.25, 0.25])
        assert np.abs(a - np.eye(2) / 2).max() <= 1e-12

    def test_round_trip_random(self, rng):
        s = with_canonical_quantizers(mub_qubit_scheme())
        for _ in range(20):
            a = random_complex(rng, (2, 2))
            assert np.abs(reconstruct(s, symbol(s, a)) - a).max() <= 1e-10

    def test_missing_quantizers(self):
        with pytest.raises(MissingQuantizersError):
            reconstruct(mub_qubit_scheme(), np.zeros(6))

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            reconstruct(matrix_units_scheme(2), np.zeros(5))


class TestStarKernel:
    @pytest.mark.parametrize("d", [2, 3])
    def test_matrix_units_delta_pattern(self, d):
        # Oracle: Tr[E_(i,j)^dag E_(i',j') E_(i'',j'')] =
        # delta_{i i'} delta_{j' i''} delta_{j'' j}.
        kernel = star_kernel(matrix_units_scheme(d))
        pairs = [(i, j) for i in range(d) for j in range(d)]
        for k, (i, j) in enumerate(pairs):
            for x, (i1, j1) in enumerate(pairs):
                for y, (i2, j2) in enumerate(pairs):
                    expected = float(i == i1 and j1 == i2 and j2 == j)
                    assert abs(kernel.values[k, x, y] - expected) <= 1e-14

    def test_pauli_first_entry(self):
        kernel = star_kernel(pauli_scheme("hermitian"))
        assert kernel.values[0, 0, 0] == pytest.approx(1 / np.sqrt(2), abs=1e-14)

    def test_shape_and_finiteness(self):
        s = with_canonical_quantizers(mub_qubit_scheme())
        kernel = star_kernel(s)
        assert kernel.values.shape == (6, 6, 6)
        assert np.all(np.isfinite(kernel.values))

    def test_missing_quantizers(self):
        with pytest.raises(MissingQuantizersError):
            star_kernel(mub_qubit_scheme())


class TestStarMultiply:
    def test_matrix_units_is_matrix_product(self, rng):
        s = matrix_units_scheme(2)
        kernel = star_kernel(s)
        for _ in range(20):
            a = random_complex(rng, (2, 2))
            b = random_complex(rng, (2, 2))
            via_kernel = star_multiply(kernel, symbol(s, a), symbol(s, b))
            assert np.abs(via_kernel - symbol(s, a @ b)).max() <= 1e-12

    def test_right_identity(self, rng):
        s = with_canonical_quantizers(sic_qubit_scheme("povm"))
        kernel = star_kernel(s)
        f_id = symbol(s, np.eye(2))
        for _ in range(10):
            f_a = symbol(s, random_complex(rng, (2, 2)))
            assert np.abs(star_multiply(kernel, f_a, f_id) - f_a).max() <= 1e-12

    def test_sic_hermitian_products(self, rng):
        s = with_canonical_quantizers(sic_qubit_scheme("povm"))
        kernel = star_kernel(s)
        for _ in range(20):
            a = random_hermitian(rng, 2)
            b = random_hermitian(rng, 2)
            via_kernel = star_multiply(kernel, symbol(s, a), symbol(s, b))
            assert np.abs(via_kernel - symbol(s, a @ b)).max() <= 1e-10

    def test_length_mismatch(self):
        kernel = star_kernel(matrix_units_scheme(2))
        with pytest.raises(LengthMismatchError):
            star_multiply(kernel, np.zeros(5), np.zeros(4))


class TestAssociativity:
    def test_matrix_units(self):
        assert associativity_residual(star_kernel(matrix_units_scheme(2))) <= 1e-12

    def test_livine(self):
        assert associativity_residual(star_kernel(livine_scheme())) <= 1e-10

    def test_mub_canonical(self):
        s = with_canonical_quantizers(mub_qubit_scheme())
        assert associativity_residual(star_kernel(s)) <= 1e-10


class TestIntertwiner:
    def test_same_scheme_gives_identity(self):
        s = matrix_units_scheme(2)
        pair = intertwiner(s, s)
        assert np.abs(pair.forward - np.eye(4)).max() <= 1e-14
        assert np.abs(pair.backward - np.eye(4)).max() <= 1e-14

    def test_minimal_pair_composes_to_identity(self):
        pair = intertwiner(matrix_units_scheme(2), pauli_scheme("hermitian"))
        assert np.abs(pair.backward @ pair.forward - np.eye(4)).max() <= 1e-12
        assert np.abs(pair.forward @ pair.backward - np.eye(4)).max() <= 1e-12

    def test_overfilled_round_trip(self, rng):
        pauli = pauli_scheme("hermitian")
        mub = with_canonical_quantizers(mub_qubit_scheme())
        pair = intertwiner(pauli, mub)
        for _ in range(100):
            a = random_complex(rng, (2, 2))
            f = symbol(pauli, a)
            assert np.abs(pair.backward @ (pair.forward @ f) - f).max() <= 1e-10

    def test_forward_maps_symbols(self, rng):
        source = pauli_scheme("hermitian")
        target = with_canonical_quantizers(sic_qubit_scheme("povm"))
        pair = intertwiner(source, target)
        a = random_complex(rng, (2, 2))
        assert np.abs(pair.forward @ symbol(source, a) - symbol(target, a)).max() <= 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            intertwiner(matrix_units_scheme(2), matrix_units_scheme(3))

    def test_not_tomographic(self):
        underfilled = Scheme(dequantizers=mub_qubit_scheme().dequantizers[:3])
        with pytest.raises(NotTomographicError):
            intertwiner(underfilled, matrix_units_scheme(2))


class TestCubicIdentity:
    def test_identity_matrix(self):
        assert cubic_unitary_residual(np.eye(4)) == 0

    def test_livine_normalized_matrix(self):
        u = np.sqrt(2) * dequantization_matrix(livine_scheme())
        assert cubic_unitary_residual(u) <= 1e-12

    @pytest.mark.parametrize("dim", [4, 9])
    def test_random_unitaries(self, rng, dim):
        for _ in range(30):
            assert cubic_unitary_residual(haar_unitary(rng, dim)) <= 1e-12

    def test_rejects_non_unitary(self):
        with pytest.raises(NotUnitaryError):
            cubic_unitary_residual(np.diag([2.0, 1.0]))


class TestSelfDualKernelConsistency:
    def test_normalization_unwinds_exactly(self):
        s = livine_scheme("dequantizer")
        rebuilt = Scheme(dequantizers=0.5 * s.quantizers, quantizers=s.quantizers)
        k1 = star_kernel(s).values
        k2 = star_kernel(rebuilt).values
        assert np.array_equal(k1, k2)
