"""Brute-force reference computations, independent of the library code paths."""
import itertools
from fractions import Fraction


def cofactor_det(rows):
    """Laplace expansion along the first row (exact for Fraction/int input)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * Fraction(rows[0][j]) * cofactor_det(minor)
    return total


def matmul(a, b):
    n = len(a)
    return [[sum(Fraction(a[i][k]) * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def inverse_2x2(m):
    (a, b), (c, d) = m
    det = Fraction(a) * d - Fraction(b) * c
    return [[d / det, -b / det], [-c / det, a / det]]


def cayley_2x2(t):
    """(I - S)(I + S)^-1 for S = [[0, -t], [t, 0]] by explicit 2x2 arithmetic."""
    t = Fraction(t)
    i_minus = [[1, t], [-t, 1]]
    i_plus = [[1, -t], [t, 1]]
    return matmul(i_minus, inverse_2x2(i_plus))


def sign_vectors(n):
    """All +-1 vectors, in the binary order E_k (entry i is -1 iff bit i of k)."""
    for k in range(2 ** n):
        yield tuple(-1 if (k >> i) & 1 else 1 for i in range(n))


def det_i_plus_ea(a_rows, signs):
    n = len(a_rows)
    m = [[(1 if i == j else 0) + signs[i] * Fraction(a_rows[i][j]) for j in range(n)] for i in range(n)]
    return cofactor_det(m)


def det_e_plus_a(a_rows, signs, c):
    n = len(a_rows)
    m = [[Fraction(a_rows[i][j]) + (signs[i] * Fraction(c[i]) if i == j else 0)
          for j in range(n)] for i in range(n)]
    return cofactor_det(m)


def leibniz_terms(n):
    return list(itertools.permutations(range(n)))


def gauss_det(rows):
    """Fraction Gaussian elimination with partial search for a nonzero pivot."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            m[k], m[p] = m[p], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return det
