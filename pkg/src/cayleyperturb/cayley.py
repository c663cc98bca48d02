"""The classical Cayley correspondence between skew-symmetric matrices and
rotations without eigenvalue -1.

``cayley_transform(S) = (I - S)(I + S)^-1``.  The two factors commute, so
the product is evaluated with a single solve ``(I + S) X = I - S``; the
inverse map ``R -> (I - R)(I + R)^-1`` is evaluated the same way.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from . import tolerances as tol
from .errors import MinusOneEigenvalue, NotOrthogonal
from .linalg import (
    Matrix,
    SkewSymmetric,
    as_matrix,
    determinant,
    min_singular_proxy,
    orthogonality_residual,
    solve,
)


class ObstructionKind(enum.Enum):
    NONE = "none"
    MINUS_ONE_EIGENVALUE = "minus_one_eigenvalue"


@dataclass(frozen=True)
class CayleyObstruction:
    """Whether R admits eigenvalue -1.

    ``witness`` is det(I + R) on the rational backend and
    min_singular_proxy(I + R) on floats.
    """

    kind: ObstructionKind
    witness: object

    @property
    def obstructed(self) -> bool:
        return self.kind is ObstructionKind.MINUS_ONE_EIGENVALUE


def check_orthogonal(R, atol: float | None = None) -> Matrix:
    R = as_matrix(R)
    if atol is None:
        atol = tol.TAU_ORTH
    if R.is_rational:
        if not R.T @ R == Matrix.identity(R.n, R.backend):
            raise NotOrthogonal("R^T R != I")
        return R
    resid = orthogonality_residual(R)
    if resid > atol:
        raise NotOrthogonal(f"|R^T R - I|_max = {resid:.3g} exceeds {atol:.3g}")
    return R


def cayley_transform(S) -> Matrix:
    """R = (I - S)(I + S)^-1 for skew-symmetric S (exact on rationals)."""
    if not isinstance(S, SkewSymmetric):
        S = SkewSymmetric(S)
    eye = Matrix.identity(S.n, S.backend)
    # I + S is nonsingular for real skew S
    return solve(eye + S, eye - S)


def obstruction_check(R, atol: float | None = None) -> CayleyObstruction:
    R = check_orthogonal(R, atol)
    shifted = Matrix.identity(R.n, R.backend) + R
    if R.is_rational:
        d = determinant(shifted)
        kind = ObstructionKind.MINUS_ONE_EIGENVALUE if d == 0 else ObstructionKind.NONE
        return CayleyObstruction(kind, d)
    proxy = min_singular_proxy(shifted)
    kind = ObstructionKind.MINUS_ONE_EIGENVALUE if proxy < tol.TAU_CAYLEY else ObstructionKind.NONE
    return CayleyObstruction(kind, proxy)


def inverse_cayley(R, atol: float | None = None) -> SkewSymmetric:
    """The unique skew S with cayley_transform(S) = R.

    Orthogonality is validated before the -1 eigenvalue check so the raised
    error kind is deterministic.
    """
    R = as_matrix(R)
    obs = obstruction_check(R, atol)
    if obs.obstructed:
        raise MinusOneEigenvalue(f"R admits eigenvalue -1 (witness {obs.witness})")
    eye = Matrix.identity(R.n, R.backend)
    return SkewSymmetric.project(solve(eye + R, eye - R))
