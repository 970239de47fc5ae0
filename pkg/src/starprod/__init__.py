"""Operator bases from d^2 x N matrices: star-product quantization toolkit.

Build dequantizer/quantizer schemes on finite-dimensional operator spaces,
compute symbols, kernels, and intertwiners, classify schemes (minimal,
overfilled, self-dual, POVM, matrix-unit-like), and verify the structural
facts that tie self-duality to scaled unitarity and rule out positive
self-dual POVM schemes.
"""

__version__ = "0.1.0"

from .errors import (
    DimensionMismatchError,
    InvalidGaugeError,
    LengthMismatchError,
    MissingQuantizersError,
    NonHermitianError,
    NonHermitianMemberError,
    NotOverfilledError,
    NotPrimeError,
    NotSICError,
    NotSquareError,
    NotSquareLengthError,
    NotTomographicError,
    NotUnitaryError,
    SamplerFailureError,
    SchemeParseError,
    SingularMatrixError,
    StarProdError,
    UnknownSchemeError,
    WrongCountError,
)
from .matrixcore import (
    DEFAULT_TOL,
    ToleranceConfig,
    hermitian_eig,
    inverse,
    rank,
    singular_values,
)
from .operator_space import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    VectorizationBasis,
    devectorize,
    hs_inner,
    matrix_unit,
    pauli_basis,
    row_stack,
    unstack,
    validate_orthonormal_basis,
    vectorize,
)
from .scheme import (
    NegativityReport,
    PovmDiagnostics,
    Scheme,
    SchemeReport,
    canonical_quantizers,
    classify,
    completeness_residual,
    dequantization_matrix,
    duality_matrix,
    gauge_quantizers,
    matrix_unit_like_detect,
    negativity_report,
    povm_check,
    quantization_matrix,
    scaled_unitary_check,
    scheme_from_dequantization_matrix,
    self_dual_coefficient,
    with_canonical_quantizers,
)
from .star_product import (
    IntertwinerPair,
    StarKernel,
    associativity_residual,
    cubic_unitary_residual,
    intertwiner,
    reconstruct,
    star_kernel,
    star_multiply,
    symbol,
)
from . import catalog, serialization, verification

__all__ = [
    "__version__",
    "DEFAULT_TOL",
    "ToleranceConfig",
    "VectorizationBasis",
    "Scheme",
    "SchemeReport",
    "PovmDiagnostics",
    "NegativityReport",
    "StarKernel",
    "IntertwinerPair",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "hermitian_eig",
    "singular_values",
    "rank",
    "inverse",
    "matrix_unit",
    "vectorize",
    "devectorize",
    "hs_inner",
    "validate_orthonormal_basis",
    "pauli_basis",
    "row_stack",
    "unstack",
    "dequantization_matrix",
    "quantization_matrix",
    "scheme_from_dequantization_matrix",
    "canonical_quantizers",
    "with_canonical_quantizers",
    "completeness_residual",
    "gauge_quantizers",
    "duality_matrix",
    "self_dual_coefficient",
    "scaled_unitary_check",
    "povm_check",
    "negativity_report",
    "matrix_unit_like_detect",
    "classify",
    "symbol",
    "reconstruct",
    "star_kernel",
    "star_multiply",
    "associativity_residual",
    "intertwiner",
    "cubic_unitary_residual",
    "catalog",
    "serialization",
    "verification",
    "StarProdError",
    "DimensionMismatchError",
    "NonHermitianError",
    "SingularMatrixError",
    "NotSquareError",
    "NotSquareLengthError",
    "WrongCountError",
    "LengthMismatchError",
    "NotTomographicError",
    "NotOverfilledError",
    "InvalidGaugeError",
    "MissingQuantizersError",
    "NonHermitianMemberError",
    "NotUnitaryError",
    "NotSICError",
    "NotPrimeError",
    "SamplerFailureError",
    "UnknownSchemeError",
    "SchemeParseError",
]
