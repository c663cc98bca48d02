"""Block normal form of orthogonal matrices and the extended Cayley
representations built on it.

Every orthogonal R factors as R = P D P^T with P orthogonal and D block
diagonal with blocks 1, -1 and 2x2 rotations [[cos t, -sin t], [sin t, cos t]].
Halving the rotation angles gives a square root of a rotation with no -1
eigenvalue, which makes the Cayley transform of the square root available
for every rotation.  Improper matrices are reached by a +/-1 diagonal factor.

Blocks are ordered PlusOne first, then rotations by increasing angle, then
MinusOne.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import tolerances as tol
from ._backend import kernels
from .cayley import cayley_transform, check_orthogonal, inverse_cayley, obstruction_check
from .errors import CayleyPerturbError, ModeInapplicable, NotSpecialOrthogonal
from .linalg import (
    FLOAT,
    RATIONAL,
    Matrix,
    SignVector,
    SkewSymmetric,
    as_matrix,
    block_diag,
    determinant,
)
from .sign_perturb import fact_e


class BlockKind(enum.Enum):
    PLUS_ONE = "plus_one"
    MINUS_ONE = "minus_one"
    ROTATION = "rotation"


@dataclass(frozen=True)
class CanonicalBlock:
    kind: BlockKind
    angle: float | None = None

    def __post_init__(self):
        if self.kind is BlockKind.ROTATION:
            if self.angle is None or not 0.0 < self.angle <= math.pi:
                raise ValueError(f"rotation angle must lie in (0, pi], got {self.angle!r}")
        elif self.angle is not None:
            raise ValueError("only rotation blocks carry an angle")

    @property
    def size(self) -> int:
        return 2 if self.kind is BlockKind.ROTATION else 1

    def array(self) -> np.ndarray:
        if self.kind is BlockKind.PLUS_ONE:
            return np.array([[1.0]])
        if self.kind is BlockKind.MINUS_ONE:
            return np.array([[-1.0]])
        c, s = math.cos(self.angle), math.sin(self.angle)
        return np.array([[c, -s], [s, c]])

    def halved(self) -> CanonicalBlock:
        if self.kind is BlockKind.ROTATION:
            return CanonicalBlock(BlockKind.ROTATION, self.angle / 2)
        if self.kind is BlockKind.MINUS_ONE:
            raise NotSpecialOrthogonal("a lone -1 block has no real rotation square root")
        return self


@dataclass(frozen=True)
class NormalForm:
    """R = p @ D @ p.T with D assembled from ``blocks``."""

    p: Matrix
    blocks: tuple[CanonicalBlock, ...]
    paired_minus_ones: bool

    def d(self) -> Matrix:
        return block_diag([b.array() for b in self.blocks])

    def reconstruct(self) -> Matrix:
        return self.p @ self.d() @ self.p.T

    def count(self, kind: BlockKind) -> int:
        return sum(1 for b in self.blocks if b.kind is kind)

    @property
    def angles(self) -> list[float]:
        return [b.angle for b in self.blocks if b.kind is BlockKind.ROTATION]


def _eigh(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if a.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0))
    return kernels.jacobi_eigh(np.ascontiguousarray(a), tol.JACOBI_TOL, tol.JACOBI_MAX_SWEEPS)


def _clusters(values: np.ndarray, radius: float) -> list[np.ndarray]:
    """Single-linkage groups of indices; ``values`` must be sorted."""
    if values.size == 0:
        return []
    groups, start = [], 0
    for i in range(1, values.size):
        if values[i] - values[i - 1] > radius:
            groups.append(np.arange(start, i))
            start = i
    groups.append(np.arange(start, values.size))
    return groups


def _planes(a_local: np.ndarray) -> list[tuple[np.ndarray, np.ndarray]]:
    """Split an even-dimensional space on which a_local = s J (J^2 = -I) into
    invariant planes (u, J u)."""
    m = a_local.shape[0]
    chosen: list[np.ndarray] = []
    planes = []
    eye = np.eye(m)
    while len(chosen) < m:
        basis = np.array(chosen).T if chosen else np.zeros((m, 0))
        residual = eye - basis @ (basis.T @ eye)
        j = int(np.argmax(np.linalg.norm(residual, axis=0)))
        u = residual[:, j]
        u /= np.linalg.norm(u)
        w = a_local @ u
        w -= basis @ (basis.T @ w) + u * (u @ w)
        norm = np.linalg.norm(w)
        if norm == 0.0 or len(chosen) + 2 > m:
            raise CayleyPerturbError("eigenvalue clustering produced an odd rotation subspace")
        w /= norm
        chosen += [u, w]
        planes.append((u, w))
    return planes


def normal_form(R, pair_minus_ones: bool = False) -> NormalForm:
    """Orthogonal P and canonical blocks with R = P D P^T.

    The symmetric part R + R^T has eigenvalues 2 cos(theta); its eigenvectors
    (cyclic Jacobi) are grouped by cos(theta) within ``CLUSTER_RADIUS``.  On
    each group the skew part of R separates fixed directions (sin = 0) from
    rotation planes, and each plane is oriented so that sin(theta) >= 0.
    Angles come from atan2 on the 2x2 restriction of R.

    With ``pair_minus_ones`` the -1 directions are grouped two at a time into
    rotation blocks of angle pi; an odd leftover stays a MinusOne block.
    """
    R = check_orthogonal(as_matrix(R)).to_float()
    r = R.array
    n = R.n
    w, v = _eigh(r + r.T)
    order = np.argsort(-w, kind="stable")
    cosines, v = w[order] / 2.0, v[:, order]

    plus, minus, rotations = [], [], []
    for group in _clusters(-cosines, tol.CLUSTER_RADIUS):
        u = v[:, group]
        k = u.T @ r @ u
        skew = 0.5 * (k - k.T)
        s2, z = _eigh(skew.T @ skew)
        sines = np.sqrt(np.clip(s2, 0.0, None))
        idx = np.argsort(sines, kind="stable")
        sines, z = sines[idx], z[:, idx]
        fixed = sines <= tol.TAU_FIXED
        for col in (u @ z[:, fixed]).T:
            (plus if col @ r @ col > 0 else minus).append(col)
        moving = np.flatnonzero(~fixed)
        for sub in _clusters(sines[moving], tol.CLUSTER_RADIUS):
            zg = z[:, moving[sub]]
            for a, b in _planes(zg.T @ skew @ zg):
                gu, gw = u @ (zg @ a), u @ (zg @ b)
                theta = math.atan2(gw @ r @ gu, gu @ r @ gu)
                rotations.append((theta, gu, gw))

    if pair_minus_ones:
        while len(minus) >= 2:
            rotations.append((math.pi, minus.pop(0), minus.pop(0)))
    rotations.sort(key=lambda t: t[0])

    cols = list(plus)
    blocks = [CanonicalBlock(BlockKind.PLUS_ONE)] * len(plus)
    for theta, gu, gw in rotations:
        cols += [gu, gw]
        blocks.append(CanonicalBlock(BlockKind.ROTATION, min(theta, math.pi)))
    cols += minus
    blocks += [CanonicalBlock(BlockKind.MINUS_ONE)] * len(minus)
    p = np.array(cols).T if cols else np.zeros((n, n))
    return NormalForm(Matrix(p, FLOAT), tuple(blocks), pair_minus_ones)


def minus_one_multiplicity(R) -> int:
    """Number of -1 eigenvalues (unpaired normal form)."""
    return normal_form(R, pair_minus_ones=False).count(BlockKind.MINUS_ONE)


def _is_proper(R: Matrix) -> bool:
    return determinant(R) > 0


def rotation_sqrt(R) -> Matrix:
    """A rotation X with X @ X = R and no eigenvalue -1 (angles halved)."""
    R = check_orthogonal(as_matrix(R))
    if not _is_proper(R):
        raise NotSpecialOrthogonal("det(R) = -1")
    nf = normal_form(R, pair_minus_ones=True)
    half = block_diag([b.halved().array() for b in nf.blocks])
    return nf.p @ half @ nf.p.T


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class PlainCayley:
    s: SkewSymmetric
    kind = "plain"

    def evaluate(self) -> Matrix:
        return cayley_transform(self.s)


@dataclass(frozen=True)
class SquaredCayley:
    s: SkewSymmetric
    kind = "squared"

    def evaluate(self) -> Matrix:
        c = cayley_transform(self.s)
        return c @ c


@dataclass(frozen=True)
class TwoFactor:
    s1: SkewSymmetric
    s2: SkewSymmetric
    kind = "two-factor"

    def evaluate(self) -> Matrix:
        return cayley_transform(self.s1) @ cayley_transform(self.s2)


@dataclass(frozen=True)
class SignedCayley:
    signs: SignVector
    s: SkewSymmetric
    kind = "signed"

    def evaluate(self) -> Matrix:
        return self.signs.as_diagonal(self.s.backend) @ cayley_transform(self.s)


OrthRepresentation = PlainCayley | SquaredCayley | TwoFactor | SignedCayley


def _rationalize_skew(s: Matrix, max_denominator: int = 10**6) -> SkewSymmetric:
    rows = [[Fraction(x).limit_denominator(max_denominator) for x in row] for row in s.array]
    return SkewSymmetric.project(Matrix(rows, RATIONAL))


def squared_cayley_rep(R) -> SquaredCayley:
    """S with cayley_transform(S)^2 = R, for any rotation R.

    For rational input the float S is snapped to nearby small-denominator
    fractions and kept in that form only if the identity then holds exactly.
    """
    R = as_matrix(R)
    s = inverse_cayley(rotation_sqrt(R))
    if R.is_rational:
        exact = _rationalize_skew(s)
        if SquaredCayley(exact).evaluate() == R:
            return SquaredCayley(exact)
    return SquaredCayley(s)


def weyl_two_factor(R) -> TwoFactor:
    """Two Cayley factors with product R; both are the squared-Cayley S."""
    s = squared_cayley_rep(R).s
    return TwoFactor(s, s)


def signed_cayley_rep(R) -> SignedCayley:
    """(E, S) with R = E (I - S)(I + S)^-1 for any orthogonal R.

    E comes from :func:`fact_e` so that I + E R is invertible; then E R has
    no eigenvalue -1 and S = inverse_cayley(E R).  Since E^2 = I this
    reconstructs R.  With unit magnitudes the greedy choice keeps
    |det(I + E R)| >= 1, so E R stays well away from the obstruction.
    """
    R = check_orthogonal(as_matrix(R))
    signs = fact_e(R)
    er = signs.as_diagonal(R.backend) @ R
    return SignedCayley(signs, inverse_cayley(er))


def plain_cayley_rep(R) -> PlainCayley:
    return PlainCayley(inverse_cayley(R))


def represent(R) -> OrthRepresentation:
    """Pick a representation: plain if possible, squared for obstructed
    rotations, signed for improper matrices."""
    R = check_orthogonal(as_matrix(R))
    if _is_proper(R):
        if not obstruction_check(R).obstructed:
            return plain_cayley_rep(R)
        return squared_cayley_rep(R)
    return signed_cayley_rep(R)


MODES = {
    "plain": plain_cayley_rep,
    "squared": squared_cayley_rep,
    "two-factor": weyl_two_factor,
    "signed": signed_cayley_rep,
}


def represent_as(R, mode: str) -> OrthRepresentation:
    """Force one representation; raises :class:`ModeInapplicable` if it cannot apply."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; choose from {sorted(MODES)}")
    R = check_orthogonal(as_matrix(R))
    if mode in ("squared", "two-factor") and not _is_proper(R):
        raise ModeInapplicable(f"mode {mode!r} needs det(R) = +1")
    if mode == "plain":
        if not _is_proper(R):
            raise ModeInapplicable("mode 'plain' needs det(R) = +1")
        if obstruction_check(R).obstructed:
            raise ModeInapplicable("mode 'plain' needs R without eigenvalue -1")
    return MODES[mode](R)


def representation_residual(rep: OrthRepresentation, R) -> float:
    return rep.evaluate().max_abs_diff(as_matrix(R))
