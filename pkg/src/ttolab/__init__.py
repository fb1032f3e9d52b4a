"""Truncated Toeplitz operators on finite-dimensional model spaces."""

__version__ = "0.1.0"

from .blaschke import (  # noqa: F401
    BlaschkeProduct,
    UNIT,
    divides,
    divisibility_residual,
    eval_blaschke,
    frostman_shift,
    gcid,
    hyperbolic_distance,
)
from .hardy import (  # noqa: F401
    BoundaryGrid,
    RationalSymbol,
    SmirnovPair,
    canonical_pair,
    inner_outer_split,
    local_smirnov_check,
    outer_from_modulus,
    riesz_project,
)
from .modelspace import (  # noqa: F401
    ModelSpaceBasis,
    conjugation_matrix,
    project_Ku,
    reproducing_kernel,
    tm_basis,
)
from .operators import (  # noqa: F401
    INF,
    SedlockClassification,
    adjoint_class_operator,
    compressed_shift,
    crofoot,
    modified_shift,
    quotient_operator,
    sedlock_membership,
    sedlock_operator,
    tto_matrix,
)
from .clark import (  # noqa: F401
    ClarkMeasure,
    atomic_mult_inverse,
    cauchy_transform,
    clark_measure,
    diagonalizing_measure,
    functional_calculus_unitary,
    spectral_data,
    verify_clark_intertwining,
)
from .suites import (  # noqa: F401
    VerificationReport,
    run_suites,
    suite_adjoint_graph,
    suite_commutant,
    suite_inverse,
    suite_product_uniqueness,
    suite_selfadjoint,
)
