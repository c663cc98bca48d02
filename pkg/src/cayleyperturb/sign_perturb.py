"""Choosing signs of a diagonal perturbation so that E + A is invertible.

Given A and nonzero magnitudes c_1..c_n, :func:`sign_assign` picks
eps_i in {+1, -1} one index at a time.  Writing d_k for the leading k x k
minor of E + A, expanding along entry (k, k) gives

    d_k = q_k + eps_k * c_k * d_{k-1}

where q_k is the same minor with the (k, k) perturbation left out.  Since
d_{k-1} != 0 and c_k != 0, the two candidates q_k +/- c_k d_{k-1} differ
by 2 c_k d_{k-1} != 0, so at least one of them is nonzero.  Induction
gives d_n = det(E + A) != 0.

The remaining functions provide the brute-force side: enumerating every
sign matrix E_k (entry i is -1 iff bit i of k is set), the column
multilinearity identity, and the vanishing sum of all E_k.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import tolerances as tol
from ._backend import kernels
from .errors import (
    ColumnsMismatch,
    ConditioningWarning,
    DimensionTooLarge,
    IndexOutOfRange,
    ZeroPerturbation,
)
from .linalg import (
    RATIONAL,
    DiagonalPerturbation,
    Matrix,
    SignVector,
    _integer_rows,
    as_matrix,
    determinant,
    to_fraction,
)

MAX_ENUMERATION_N = 16


@dataclass(frozen=True)
class SignSearchReport:
    """Result of :func:`sign_assign`.

    ``minor_values[k-1]`` is the accepted leading k x k minor of E + A; the
    last one is det(E + A).
    """

    signs: SignVector
    minor_values: tuple
    perturbation: DiagonalPerturbation
    backend: str

    @property
    def flips(self) -> int:
        return self.signs.flips

    @property
    def determinant(self):
        if not self.minor_values:
            return Fraction(1) if self.backend == RATIONAL else 1.0
        return self.minor_values[-1]

    def perturbed(self, A) -> Matrix:
        """E + A for the chosen signs."""
        A = as_matrix(A)
        return A + self.perturbation.matrix(A.backend)


def _hadamard_bound(a: np.ndarray) -> float:
    return float(np.prod(np.linalg.norm(a, axis=1))) if a.size else 1.0


def sign_assign(A, c: Sequence, prefer_plus: bool = True) -> SignSearchReport:
    """Signs eps with det(diag(eps_i c_i) + A) != 0.

    On the rational backend the result is exact: the preferred sign is taken
    whenever it gives a nonzero minor.  On floats the sign maximizing
    |d_k| is taken (ties go to the preferred sign), which keeps
    |d_k| >= |c_k d_{k-1}|; a :class:`ConditioningWarning` is issued if the
    final determinant is tiny next to its Hadamard bound.
    """
    A = as_matrix(A)
    n = A.n
    c = list(c)
    if len(c) != n:
        raise ValueError(f"expected {n} magnitudes, got {len(c)}")
    if A.is_rational:
        c = [to_fraction(x) for x in c]
    else:
        c = [float(x) for x in c]
    if any(x == 0 for x in c):
        raise ZeroPerturbation("every magnitude c_i must be nonzero")

    preferred = 1 if prefer_plus else -1
    work = np.array(A.array, dtype=object if A.is_rational else np.float64)
    signs: list[int] = []
    minors = []
    d_prev = Fraction(1) if A.is_rational else 1.0
    for k in range(n):
        q = determinant(Matrix(work[:k + 1, :k + 1], A.backend))
        term = c[k] * d_prev
        first, second = q + preferred * term, q - preferred * term
        if A.is_rational:
            eps = preferred if first != 0 else -preferred
        else:
            eps = preferred if abs(first) >= abs(second) else -preferred
        d_prev = first if eps == preferred else second
        work[k, k] = work[k, k] + eps * c[k]
        signs.append(eps)
        minors.append(d_prev)

    sv = SignVector(tuple(signs))
    report = SignSearchReport(sv, tuple(minors), DiagonalPerturbation(tuple(c), sv), A.backend)
    if not A.is_rational and n:
        bound = _hadamard_bound(work)
        if abs(report.determinant) < tol.TAU_FACT_E * bound:
            warnings.warn(
                f"det(E + A) = {report.determinant:.3g} is tiny relative to its "
                f"Hadamard bound {bound:.3g}; use the rational backend to certify",
                ConditioningWarning,
                stacklevel=2,
            )
    return report


def fact_e(A) -> SignVector:
    """Signs eps with I + diag(eps) A invertible.

    Because E^2 = I, I + EA = E(E + A), so this is :func:`sign_assign` with
    all magnitudes equal to one.
    """
    A = as_matrix(A)
    ones = [1] * A.n
    if A.is_rational:
        return sign_assign(A, ones).signs
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ConditioningWarning)
        report = sign_assign(A, ones)
    if not caught:
        return report.signs
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ConditioningWarning)
        retry = sign_assign(A, ones, prefer_plus=False)
    if not caught:
        return retry.signs
    warnings.warn("fact_e: both tie-breaks give a near-singular I + EA",
                  ConditioningWarning, stacklevel=2)
    return report.signs if abs(report.determinant) >= abs(retry.determinant) else retry.signs


def _check_enum_size(n: int, max_n: int) -> None:
    if n > max_n:
        raise DimensionTooLarge(f"n={n} exceeds the enumeration bound {max_n}")


def kahan_enumerate(A, max_n: int = MAX_ENUMERATION_N) -> list[SignVector]:
    """Every E_k (ascending k) with det(I + E_k A) != 0, decided exactly.

    Float entries are taken at their exact binary value, so the zero test is
    exact for either backend.
    """
    A = as_matrix(A).to_rational()
    n = A.n
    _check_enum_size(n, max_n)
    if n == 0:
        return [SignVector(())]
    num, denom = _integer_rows(A)
    survivors = []
    for k in range(2 ** n):
        rows = []
        for i in range(n):
            s = -1 if (k >> i) & 1 else 1
            row = [s * x for x in num[i]]
            row[i] += denom
            rows.append(row)
        if kernels.bareiss_det(rows) != 0:
            survivors.append(SignVector.from_index(k, n))
    return survivors


def kahan_identity_check(A, B, j: int) -> tuple:
    """(det(A + B), 2^(n-1) (det A + det B)) for A, B differing only in column j.

    ``j`` is 0-based.  The two components agree by multilinearity.
    """
    A = as_matrix(A)
    B = as_matrix(B, A.backend)
    if A.n != B.n:
        raise ValueError(f"dimension mismatch: {A.n} vs {B.n}")
    n = A.n
    if not 0 <= j < n:
        raise IndexOutOfRange(f"column {j} outside 0..{n - 1}")
    others = [k for k in range(n) if k != j]
    diff = A.array[:, others] != B.array[:, others]
    if np.any(diff):
        raise ColumnsMismatch(f"A and B differ outside column {j}")
    lhs = determinant(A + B)
    rhs = 2 ** (n - 1) * (determinant(A) + determinant(B))
    return lhs, rhs


def sign_matrix_sum_check(n: int, max_n: int = MAX_ENUMERATION_N) -> Matrix:
    """The sum of all 2^n sign matrices E_k, as an exact matrix (always zero)."""
    _check_enum_size(n, max_n)
    k = np.arange(2 ** n, dtype=np.int64)[:, None]
    bits = (k >> np.arange(n, dtype=np.int64)) & 1
    totals = (1 - 2 * bits).sum(axis=0)
    return Matrix.diag([Fraction(int(t)) for t in totals], RATIONAL)


def adjacent_flip_chain(n: int, max_n: int = MAX_ENUMERATION_N) -> list[SignVector]:
    """E_0, ..., E_{2^n - 1} in binary order (entry i is -1 iff bit i of k is set)."""
    _check_enum_size(n, max_n)
    return [SignVector.from_index(k, n) for k in range(2 ** n)]


def differing_positions(e: SignVector, f: SignVector) -> list[int]:
    return [i for i, (a, b) in enumerate(zip(e, f)) if a != b]


def telescoping_pairing_holds(chain: Sequence[SignVector]) -> bool:
    """Check the pairing used by the telescoping determinant argument.

    For every level l, each aligned block of 2^(l+1) consecutive sign
    vectors splits into two halves that match element by element except at
    position l.
    """
    size = len(chain)
    n = len(chain[0]) if chain else 0
    if size != 2 ** n:
        return False
    for level in range(n):
        half = 1 << level
        for start in range(0, size, 2 * half):
            for t in range(half):
                if differing_positions(chain[start + t], chain[start + half + t]) != [level]:
                    return False
    return True


# ---------------------------------------------------------------------------
# det(C + A) as a polynomial in formal diagonal variables c_1..c_n

def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, a in p.items():
        for m2, b in q.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = out.get(m, 0) + a * b
    return {m: v for m, v in out.items() if v != 0}


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def perturbed_det_polynomial(A) -> dict[tuple[int, ...], Fraction]:
    """Expand det(diag(c) + A) over all permutations with c_i as formal variables.

    Returns {exponent tuple: coefficient}.  Each entry of diag(c) + A is the
    polynomial A_ij + [i == j] c_i; the expansion multiplies these generically,
    so exponents above one would show up if they occurred.
    """
    A = as_matrix(A).to_rational()
    n = A.n
    zero_exp = (0,) * n
    total: dict = {}
    for perm in itertools.permutations(range(n)):
        term = {zero_exp: Fraction(_perm_sign(perm))}
        for i, j in enumerate(perm):
            entry = {zero_exp: A.array[i, j]} if A.array[i, j] != 0 else {}
            if i == j:
                entry[tuple(int(t == i) for t in range(n))] = Fraction(1)
            term = _poly_mul(term, entry)
            if not term:
                break
        for m, v in term.items():
            total[m] = total.get(m, 0) + v
    return {m: v for m, v in total.items() if v != 0}


def monomial_structure_check(A) -> tuple[bool, Fraction]:
    """(every monomial of det(C + A) is multilinear, coefficient of c_1...c_n)."""
    poly = perturbed_det_polynomial(A)
    n = as_matrix(A).n
    multilinear = all(max(m, default=0) <= 1 for m in poly)
    return multilinear, poly.get((1,) * n, Fraction(0))


def enumerate_det_signs(A, c: Sequence) -> list[tuple[SignVector, Fraction]]:
    """Brute force: det(E + A) for every sign vector (exact)."""
    A = as_matrix(A).to_rational()
    c = [to_fraction(x) for x in c]
    out = []
    for k in range(2 ** A.n):
        sv = SignVector.from_index(k, A.n)
        E = Matrix.diag([s * x for s, x in zip(sv, c)], RATIONAL)
        out.append((sv, determinant(A + E)))
    return out


__all__ = [
    "SignSearchReport",
    "sign_assign",
    "fact_e",
    "kahan_enumerate",
    "kahan_identity_check",
    "sign_matrix_sum_check",
    "adjacent_flip_chain",
    "differing_positions",
    "telescoping_pairing_holds",
    "perturbed_det_polynomial",
    "monomial_structure_check",
    "enumerate_det_signs",
    "MAX_ENUMERATION_N",
]

