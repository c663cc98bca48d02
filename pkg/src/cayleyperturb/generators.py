"""Seeded random matrices for tests, demos and the ``gen`` CLI verb.

All generators draw from numpy's PCG64 bit generator, so a given
``(arguments, seed)`` always produces the same matrix.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import BadRank
from .linalg import FLOAT, RATIONAL, Matrix, SkewSymmetric, qr_orthonormalize, rank


def rng(seed: int | None) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def gen_haar_orthogonal(n: int, seed: int | None = None, det: int | None = None) -> Matrix:
    """Haar-distributed orthogonal matrix; ``det=+1``/``-1`` fixes the
    determinant by negating the first column when needed."""
    if n < 1:
        raise ValueError("n must be positive")
    g = rng(seed).standard_normal((n, n))
    q = qr_orthonormalize(Matrix(g, FLOAT)).array.copy()
    if det is not None:
        if det not in (1, -1):
            raise ValueError("det must be +1 or -1")
        if np.sign(np.linalg.det(q)) != det:
            q[:, 0] = -q[:, 0]
    return Matrix(q, FLOAT)


def gen_haar_rotation(n: int, seed: int | None = None) -> Matrix:
    return gen_haar_orthogonal(n, seed, det=1)


def gen_skew(n: int, seed: int | None = None, scale: float = 1.0) -> SkewSymmetric:
    g = rng(seed).standard_normal((n, n)) * scale
    return SkewSymmetric.project(Matrix(g, FLOAT))


def gen_integer(n: int, seed: int | None = None, low: int = -5, high: int = 5) -> Matrix:
    a = rng(seed).integers(low, high, endpoint=True, size=(n, n))
    return Matrix([[Fraction(int(x)) for x in row] for row in a], RATIONAL)


def gen_singular(n: int, rank_: int, seed: int | None = None, low: int = -3, high: int = 3) -> Matrix:
    """Integer matrix of exact rank ``rank_`` < n, as a product of random
    n x rank and rank x n integer factors (redrawn until the rank is exact)."""
    if not 0 <= rank_ < n:
        raise BadRank(f"rank must satisfy 0 <= rank < n, got rank={rank_}, n={n}")
    gen = rng(seed)
    while True:
        left = gen.integers(low, high, endpoint=True, size=(n, rank_))
        right = gen.integers(low, high, endpoint=True, size=(rank_, n))
        prod = left @ right
        m = Matrix([[Fraction(int(x)) for x in row] for row in prod], RATIONAL)
        if rank(m) == rank_:
            return m
