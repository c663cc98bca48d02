"""Dense square matrices over two scalar backends.

``"float"`` matrices hold float64 entries; ``"rational"`` matrices hold
:class:`fractions.Fraction` entries and every operation on them is exact.
Matrices are immutable: the underlying array is read-only and every
operation returns a new matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from . import tolerances as tol
from ._backend import kernels
from .errors import IndexOutOfRange, InvalidSkew, NonSquare, SingularMatrix, ZeroPerturbation

FLOAT = "float"
RATIONAL = "rational"
BACKENDS = (FLOAT, RATIONAL)


def to_fraction(x) -> Fraction:
    """Exact conversion; floats keep their exact binary value, strings may be ``p/q``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise ValueError(f"not a rational number: {x!r}") from None
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            raise ValueError(f"non-finite entry: {x!r}")
        return Fraction(float(x))
    return Fraction(x)


class Matrix:
    """An immutable n x n matrix with a fixed scalar backend."""

    __slots__ = ("_a", "_backend")

    def __init__(self, data, backend: str | None = None):
        if isinstance(data, Matrix):
            if backend is None:
                backend = data.backend
            data = data._a
        if backend is None:
            backend = _infer_backend(data)
        if backend not in BACKENDS:
            raise ValueError(f"unknown backend {backend!r}")
        if backend == FLOAT:
            a = np.array(data, dtype=np.float64)
        else:
            a = np.array(data, dtype=object)
        if a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise NonSquare(f"matrix must be square, got shape {a.shape}")
        if backend == RATIONAL:
            a = np.vectorize(to_fraction, otypes=[object])(a) if a.size else a
        elif not np.all(np.isfinite(a)):
            raise ValueError("matrix has non-finite entries")
        a.flags.writeable = False
        self._a = a
        self._backend = backend

    # construction helpers -------------------------------------------------
    @classmethod
    def identity(cls, n: int, backend: str = FLOAT) -> Matrix:
        if backend == RATIONAL:
            return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], RATIONAL)
        return cls(np.eye(n), FLOAT)

    @classmethod
    def zeros(cls, n: int, backend: str = FLOAT) -> Matrix:
        if backend == RATIONAL:
            return cls([[Fraction(0)] * n for _ in range(n)], RATIONAL)
        return cls(np.zeros((n, n)), FLOAT)

    @classmethod
    def diag(cls, values: Sequence, backend: str | None = None) -> Matrix:
        values = list(values)
        if backend is None:
            backend = RATIONAL if any(isinstance(v, Fraction) for v in values) else FLOAT
        n = len(values)
        zero = Fraction(0) if backend == RATIONAL else 0.0
        rows = [[values[i] if i == j else zero for j in range(n)] for i in range(n)]
        return cls(rows, backend)

    # accessors ------------------------------------------------------------
    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def backend(self) -> str:
        return self._backend

    @property
    def is_rational(self) -> bool:
        return self._backend == RATIONAL

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries (float64 or object dtype)."""
        return self._a

    def __getitem__(self, idx):
        return self._a[idx]

    def tolist(self) -> list[list]:
        return self._a.tolist()

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        if self.is_rational:
            body = [[str(x) for x in row] for row in self._a.tolist()]
        else:
            body = self._a.tolist()
        return f"Matrix({body}, backend={self._backend!r})"

    # conversions ----------------------------------------------------------
    def to_float(self) -> Matrix:
        if not self.is_rational:
            return self
        return Matrix(self._a.astype(np.float64), FLOAT)

    def to_rational(self) -> Matrix:
        if self.is_rational:
            return self
        return Matrix(self._a, RATIONAL)

    def with_backend(self, backend: str) -> Matrix:
        return self.to_rational() if backend == RATIONAL else self.to_float()

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> tuple[np.ndarray, np.ndarray, str]:
        if not isinstance(other, Matrix):
            other = Matrix(other, self._backend)
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        if self._backend == other._backend:
            return self._a, other._a, self._backend
        return self.to_float()._a, other.to_float()._a, FLOAT

    def __add__(self, other) -> Matrix:
        a, b, backend = self._coerce(other)
        return Matrix(a + b, backend)

    def __sub__(self, other) -> Matrix:
        a, b, backend = self._coerce(other)
        return Matrix(a - b, backend)

    def __neg__(self) -> Matrix:
        return Matrix(-self._a, self._backend)

    def __matmul__(self, other) -> Matrix:
        a, b, backend = self._coerce(other)
        if backend == RATIONAL:
            return Matrix(_object_matmul(a, b), RATIONAL)
        return Matrix(a @ b, FLOAT)

    def __mul__(self, scalar) -> Matrix:
        if isinstance(scalar, Matrix):
            raise TypeError("use @ for matrix products")
        if self.is_rational:
            if isinstance(scalar, float):
                return Matrix(self.to_float()._a * scalar, FLOAT)
            return Matrix(self._a * to_fraction(scalar), RATIONAL)
        return Matrix(self._a * float(scalar), FLOAT)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Matrix:
        if k < 0:
            raise ValueError("negative powers are not supported; use solve")
        out = Matrix.identity(self.n, self._backend)
        for _ in range(k):
            out = out @ self
        return out

    @property
    def T(self) -> Matrix:
        return Matrix(self._a.T, self._backend)

    def leading(self, k: int) -> Matrix:
        """Top-left k x k submatrix."""
        return Matrix(self._a[:k, :k], self._backend)

    # comparisons ----------------------------------------------------------
    def max_abs(self):
        if self.n == 0:
            return Fraction(0) if self.is_rational else 0.0
        if self.is_rational:
            return max(abs(x) for x in self._a.flat)
        return float(np.max(np.abs(self._a)))

    def max_abs_diff(self, other) -> float:
        a, b, _ = self._coerce(other)
        if a.size == 0:
            return 0.0
        if a.dtype == object:
            return float(max(abs(x - y) for x, y in zip(a.flat, b.flat)))
        return float(np.max(np.abs(a - b)))

    def allclose(self, other, atol: float) -> bool:
        """Entrywise comparison within ``atol`` (max norm)."""
        a, b, backend = self._coerce(other)
        if backend == RATIONAL:
            return all(abs(x - y) <= to_fraction(atol) for x, y in zip(a.flat, b.flat))
        return self.max_abs_diff(other) <= atol

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if not (self.is_rational and other.is_rational):
            raise TypeError("float matrices are compared with allclose(), never exactly")
        return self.n == other.n and bool(np.all(self._a == other._a))

    __hash__ = None

    def is_zero(self) -> bool:
        if self.is_rational:
            return all(x == 0 for x in self._a.flat)
        return bool(np.all(self._a == 0.0))


def _infer_backend(data) -> str:
    if isinstance(data, np.ndarray) and data.dtype != object:
        return FLOAT
    flat = np.array(data, dtype=object).ravel()
    if any(isinstance(x, (Fraction, str)) for x in flat):
        return RATIONAL
    return FLOAT


def _object_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    out = np.empty((n, n), dtype=object)
    bt = b.T
    for i in range(n):
        row = a[i]
        for j in range(n):
            out[i, j] = sum((x * y for x, y in zip(row, bt[j])), Fraction(0))
    return out


def as_matrix(x, backend: str | None = None) -> Matrix:
    if isinstance(x, Matrix) and (backend is None or backend == x.backend):
        return x
    return Matrix(x, backend)


# ---------------------------------------------------------------------------
# constrained types


class SkewSymmetric(Matrix):
    """A matrix with S^T = -S.

    Rational inputs must be exactly skew.  Float inputs may deviate by
    ``TAU_SKEW * max(1, |S|_max)`` and are then projected onto the exact
    skew part, so the stored diagonal is exactly zero.
    """

    __slots__ = ()

    def __init__(self, data, backend: str | None = None):
        m = Matrix(data, backend)
        a = m.array
        if m.is_rational:
            if not bool(np.all(a == -a.T)):
                raise InvalidSkew("matrix is not skew-symmetric")
            super().__init__(a, RATIONAL)
            return
        bound = tol.TAU_SKEW * max(1.0, m.max_abs())
        if a.size and float(np.max(np.abs(a + a.T))) > bound:
            raise InvalidSkew(f"|S + S^T|_max exceeds {bound:.3g}")
        s = 0.5 * (a - a.T)
        np.fill_diagonal(s, 0.0)
        super().__init__(s, FLOAT)

    @classmethod
    def project(cls, data) -> SkewSymmetric:
        """(A - A^T) / 2 without a tolerance check (for computed results)."""
        m = Matrix(data)
        if m.is_rational:
            half = Fraction(1, 2)
            return cls((m - m.T) * half)
        return cls(0.5 * (m.array - m.array.T), FLOAT)

    @classmethod
    def from_upper(cls, values: Sequence, n: int, backend: str = FLOAT) -> SkewSymmetric:
        """Build from the strictly-upper entries in row-major order."""
        zero = Fraction(0) if backend == RATIONAL else 0.0
        rows = [[zero] * n for _ in range(n)]
        it = iter(values)
        for i in range(n):
            for j in range(i + 1, n):
                v = next(it)
                rows[i][j] = v
                rows[j][i] = -v
        return cls(rows, backend)


@dataclass(frozen=True)
class SignVector:
    """A vector of +1/-1 entries, i.e. the diagonal of a sign matrix E."""

    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if any(s not in (1, -1) for s in signs):
            raise ValueError(f"sign entries must be +1 or -1, got {self.signs!r}")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def ones(cls, n: int) -> SignVector:
        return cls((1,) * n)

    @classmethod
    def from_index(cls, k: int, n: int) -> SignVector:
        """The sign vector E_k: entry i (0-based) is -1 iff bit i of k is set."""
        if not 0 <= k < 2 ** n:
            raise IndexOutOfRange(f"k={k} outside 0..2^{n}-1")
        return cls(tuple(-1 if (k >> i) & 1 else 1 for i in range(n)))

    @property
    def index(self) -> int:
        return sum(1 << i for i, s in enumerate(self.signs) if s == -1)

    @property
    def flips(self) -> int:
        return sum(1 for s in self.signs if s == -1)

    def __len__(self) -> int:
        return len(self.signs)

    def __iter__(self):
        return iter(self.signs)

    def __getitem__(self, i):
        return self.signs[i]

    def as_diagonal(self, backend: str = RATIONAL) -> Matrix:
        if backend == RATIONAL:
            return Matrix.diag([Fraction(s) for s in self.signs], RATIONAL)
        return Matrix.diag([float(s) for s in self.signs], FLOAT)

    def __str__(self) -> str:
        return "(" + ", ".join("+1" if s > 0 else "-1" for s in self.signs) + ")"


@dataclass(frozen=True)
class DiagonalPerturbation:
    """Magnitudes c_i (all nonzero) with signs eps_i; E = diag(eps_i * c_i)."""

    magnitudes: tuple
    signs: SignVector

    def __post_init__(self):
        if len(self.magnitudes) != len(self.signs):
            raise ValueError("magnitudes and signs differ in length")
        if any(c == 0 for c in self.magnitudes):
            raise ZeroPerturbation("every magnitude c_i must be nonzero")

    def matrix(self, backend: str = RATIONAL) -> Matrix:
        vals = [s * c for s, c in zip(self.signs, self.magnitudes)]
        if backend == RATIONAL:
            return Matrix.diag([to_fraction(v) for v in vals], RATIONAL)
        return Matrix.diag([float(v) for v in vals], FLOAT)


# ---------------------------------------------------------------------------
# operations


def _integer_rows(m: Matrix) -> tuple[list[list[int]], int]:
    """Scale a rational matrix to integers: returns (rows, common denominator)."""
    denom = reduce(math.lcm, (x.denominator for x in m.array.flat), 1)
    rows = [[x.numerator * (denom // x.denominator) for x in row] for row in m.array.tolist()]
    return rows, denom


def determinant(A):
    """det(A).  Exact (fraction-free Bareiss) on rationals, pivoted LU on floats."""
    A = as_matrix(A)
    if A.n == 0:
        return Fraction(1) if A.is_rational else 1.0
    if A.is_rational:
        rows, denom = _integer_rows(A)
        return Fraction(kernels.bareiss_det(rows), denom ** A.n)
    return float(kernels.lu_det(A.array))


def leading_principal_minor(A, k: int):
    A = as_matrix(A)
    if not 1 <= k <= A.n:
        raise IndexOutOfRange(f"k={k} outside 1..{A.n}")
    return determinant(A.leading(k))


def solve(A, B) -> Matrix:
    """Return X with A @ X = B.

    Raises :class:`SingularMatrix` on an exactly zero pivot column (rational)
    or a pivot below ``TAU_PIVOT_REL * |A|_max`` (float).
    """
    A = as_matrix(A)
    B = as_matrix(B)
    if B.n != A.n:
        raise ValueError(f"dimension mismatch: {A.n} vs {B.n}")
    if A.is_rational and B.is_rational:
        return Matrix(_rational_solve(A.array, B.array), RATIONAL)
    a = A.to_float().array
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if A.n and scale == 0.0:
        raise SingularMatrix("zero matrix")
    lu, piv, _ = kernels.lu_factor(a)
    if A.n and float(np.min(np.abs(np.diag(lu)))) < tol.TAU_PIVOT_REL * scale:
        raise SingularMatrix("pivot below tolerance")
    return Matrix(kernels.lu_solve(lu, piv, B.to_float().array), FLOAT)


def _rational_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    m = [list(a[i]) + list(b[i]) for i in range(n)]
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k] != 0), None)
        if p is None:
            raise SingularMatrix(f"no nonzero pivot in column {k}")
        m[k], m[p] = m[p], m[k]
        inv = 1 / m[k][k]
        m[k] = [x * inv for x in m[k]]
        for i in range(n):
            if i != k and m[i][k] != 0:
                f = m[i][k]
                mk = m[k]
                m[i] = [x - f * y for x, y in zip(m[i], mk)]
    return np.array([row[n:] for row in m], dtype=object).reshape(n, n)


def inverse(A) -> Matrix:
    A = as_matrix(A)
    return solve(A, Matrix.identity(A.n, A.backend))


def qr_orthonormalize(A) -> Matrix:
    """Q of the QR factorization of A, normalized so diag(R) > 0.

    With i.i.d. Gaussian input this gives a Haar-distributed orthogonal Q.
    """
    a = as_matrix(A).to_float().array
    n = a.shape[0]
    if n == 0:
        return Matrix.zeros(0)
    q, r = kernels.householder_qr(a)
    d = np.diag(r)
    scale = float(np.max(np.abs(a)))
    if scale == 0.0 or float(np.min(np.abs(d))) < tol.TAU_PIVOT_REL * scale:
        raise SingularMatrix("QR of a singular matrix")
    return Matrix(q * np.sign(d), FLOAT)


def min_singular_proxy(A) -> float:
    """Smallest absolute LU pivot divided by n.

    A cheap threshold statistic for near-singularity; it is not sigma_min.
    """
    a = as_matrix(A).to_float().array
    n = a.shape[0]
    if n == 0:
        return math.inf
    return float(kernels.min_abs_pivot(a)) / n


def rank(A) -> int:
    """Exact rank on rationals; pivot-tolerance rank on floats."""
    A = as_matrix(A)
    n = A.n
    if A.is_rational:
        m = [list(r) for r in A.array.tolist()]
        r = 0
        for c in range(n):
            p = next((i for i in range(r, n) if m[i][c] != 0), None)
            if p is None:
                continue
            m[r], m[p] = m[p], m[r]
            for i in range(r + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] / m[r][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            r += 1
        return r
    s = np.linalg.svd(A.array, compute_uv=False)
    return int(np.sum(s > max(n, 1) * np.finfo(float).eps * (s[0] if s.size else 0.0)))


def orthogonality_residual(R) -> float:
    """|R^T R - I|_max."""
    R = as_matrix(R)
    return (R.T @ R).max_abs_diff(Matrix.identity(R.n, R.backend))


def block_diag(blocks: Iterable[Matrix | np.ndarray], backend: str = FLOAT) -> Matrix:
    arrays = [b.array if isinstance(b, Matrix) else np.atleast_2d(b) for b in blocks]
    n = sum(a.shape[0] for a in arrays)
    zero = Fraction(0) if backend == RATIONAL else 0.0
    out = np.full((n, n), zero, dtype=object if backend == RATIONAL else np.float64)
    i = 0
    for a in arrays:
        k = a.shape[0]
        out[i:i + k, i:i + k] = a
        i += k
    return Matrix(out, backend)


def rotation2(theta: float) -> Matrix:
    c, s = math.cos(theta), math.sin(theta)
    return Matrix([[c, -s], [s, c]], FLOAT)
