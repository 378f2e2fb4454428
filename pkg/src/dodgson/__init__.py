"""Exact determinants by Dodgson condensation, with executable checks of the
Desnanot-Jacobi identity that makes condensation correct."""

from .scalar import (
    INTEGERS,
    RATIONALS,
    DomainMismatchError,
    InexactDivisionError,
    RingDomain,
    Scalar,
    add,
    div_exact,
    mul,
    parse_domain,
    parse_scalar,
    prime_field,
    sub,
)
from .matrix import (
    Matrix,
    MinorSpec,
    OracleBoundError,
    ShapeError,
    build_A_k,
    build_B_l,
    det_bareiss,
    det_cofactor,
    minor,
    random_matrix,
)
from .matfile import MatrixFormatError, format_matrix, parse_matrix, read_matrix
from .condensation import (
    CondensationAborted,
    CondensationTrace,
    ZeroPolicy,
    apply_row_swap_policy,
    condense_step,
    dodgson_det,
    format_trace,
)
from .identities import (
    DependentInteriorSpec,
    PreconditionError,
    ResidualReport,
    corner_identity_check,
    desnanot_jacobi_check,
    fuzz_identities,
    gamma_lambda_digamma_check,
    lemma1_checks,
    lemma2_checks,
    lemma3_check,
    make_singular_interior,
    relocate,
)

__version__ = "0.1.0"
