"""Extended Cayley representations of orthogonal matrices and sign choices
for diagonal perturbations that make any matrix invertible."""
from ._backend import KERNEL_BACKEND
from .cayley import (
    CayleyObstruction,
    ObstructionKind,
    cayley_transform,
    check_orthogonal,
    inverse_cayley,
    obstruction_check,
)
from .errors import (
    BadRank,
    CayleyPerturbError,
    ColumnsMismatch,
    ConditioningWarning,
    DimensionTooLarge,
    IndexOutOfRange,
    InvalidSkew,
    MinusOneEigenvalue,
    ModeInapplicable,
    NonSquare,
    NotOrthogonal,
    NotSpecialOrthogonal,
    ParseError,
    SingularMatrix,
    ZeroPerturbation,
)
from .linalg import (
    FLOAT,
    RATIONAL,
    DiagonalPerturbation,
    Matrix,
    SignVector,
    SkewSymmetric,
    determinant,
    inverse,
    leading_principal_minor,
    min_singular_proxy,
    qr_orthonormalize,
    rank,
    solve,
)
from .normal_form import (
    BlockKind,
    CanonicalBlock,
    NormalForm,
    PlainCayley,
    SignedCayley,
    SquaredCayley,
    TwoFactor,
    normal_form,
    represent,
    represent_as,
    rotation_sqrt,
    signed_cayley_rep,
    squared_cayley_rep,
    weyl_two_factor,
)
from .sign_perturb import (
    SignSearchReport,
    adjacent_flip_chain,
    fact_e,
    kahan_enumerate,
    kahan_identity_check,
    monomial_structure_check,
    sign_assign,
    sign_matrix_sum_check,
)

__version__ = "0.1.0"
