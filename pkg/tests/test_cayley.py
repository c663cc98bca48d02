from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayleyperturb import (
    InvalidSkew,
    Matrix,
    MinusOneEigenvalue,
    NotOrthogonal,
    ObstructionKind,
    SkewSymmetric,
    cayley_transform,
    determinant,
    inverse,
    inverse_cayley,
    obstruction_check,
)
from cayleyperturb.generators import gen_skew
from cayleyperturb.linalg import rotation2
from oracles import cayley_2x2


def skew2(t, backend="rational"):
    return SkewSymmetric([[0, -t], [t, 0]], backend)


def test_zero_maps_to_identity():
    assert cayley_transform(SkewSymmetric(Matrix.zeros(3))).allclose(Matrix.identity(3), 0)
    assert cayley_transform(Matrix.zeros(3, "rational")) == Matrix.identity(3, "rational")


def test_two_by_two_examples_against_closed_form():
    assert cayley_2x2(1) == [[0, 1], [-1, 0]]
    assert cayley_2x2(Fraction(1, 2)) == [[Fraction(3, 5), Fraction(4, 5)], [Fraction(-4, 5), Fraction(3, 5)]]
    assert cayley_transform(skew2(Fraction(1))) == Matrix(cayley_2x2(1), "rational")
    assert cayley_transform(skew2(Fraction(1, 2))) == Matrix([["3/5", "4/5"], ["-4/5", "3/5"]])
    assert cayley_transform(skew2(1.0, "float")).allclose(Matrix([[0.0, 1.0], [-1.0, 0.0]]), 1e-15)


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=-20, max_value=20, max_denominator=50))
def test_two_by_two_exact_family(t):
    t = Fraction(t)
    r = cayley_transform(skew2(t))
    assert r == Matrix(cayley_2x2(t), "rational")
    assert inverse_cayley(r) == skew2(t)


def test_inverse_examples():
    assert inverse_cayley(Matrix.identity(3, "rational")).is_zero()
    s = inverse_cayley(Matrix([["3/5", "4/5"], ["-4/5", "3/5"]]))
    assert s == Matrix([[0, "-1/2"], ["1/2", 0]])
    with pytest.raises(MinusOneEigenvalue):
        inverse_cayley(-Matrix.identity(2, "rational"))
    with pytest.raises(MinusOneEigenvalue):
        inverse_cayley(-Matrix.identity(2))


def test_inverse_validates_orthogonality_first():
    with pytest.raises(NotOrthogonal):
        inverse_cayley(Matrix([[2.0, 0.0], [0.0, -1.0]]))
    with pytest.raises(NotOrthogonal):
        inverse_cayley(Matrix([[2, 0], [0, -1]], "rational"))


def test_non_skew_rejected():
    with pytest.raises(InvalidSkew):
        cayley_transform(Matrix([[0.0, 1.0], [1.0, 0.0]]))


def test_obstruction_examples():
    assert obstruction_check(Matrix.identity(3)).kind is ObstructionKind.NONE
    assert obstruction_check(-Matrix.identity(2)).kind is ObstructionKind.MINUS_ONE_EIGENVALUE
    # det(I + R) = 2 + 2 cos(theta) vanishes at theta = pi
    assert obstruction_check(rotation2(np.pi)).obstructed
    assert not obstruction_check(rotation2(np.pi - 1e-3)).obstructed
    obs = obstruction_check(-Matrix.identity(2, "rational"))
    assert obs.obstructed and obs.witness == 0
    with pytest.raises(NotOrthogonal):
        obstruction_check(Matrix([[1.0, 1.0], [0.0, 1.0]]))


@pytest.mark.parametrize("seed", range(25))
def test_float_round_trip(seed):
    n = 2 + seed
    s = gen_skew(n, seed)
    r = cayley_transform(s)
    assert (r.T @ r).max_abs_diff(Matrix.identity(n)) <= 1e-10
    assert abs(determinant(r) - 1) <= 1e-10
    assert inverse_cayley(r).max_abs_diff(s) <= 1e-9


def rational_skews(max_n=4):
    return st.integers(1, max_n).flatmap(lambda n: st.lists(
        st.fractions(min_value=-5, max_value=5, max_denominator=7),
        min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2).map(
        lambda vals, n=n: SkewSymmetric.from_upper([Fraction(v) for v in vals], n, "rational")))


@settings(max_examples=60, deadline=None)
@given(rational_skews())
def test_rational_round_trip_and_invariants(s):
    n = s.n
    eye = Matrix.identity(n, "rational")
    r = cayley_transform(s)
    assert r.T @ r == eye
    assert determinant(r) == 1
    assert determinant(eye + r) != 0
    assert inverse_cayley(r) == s
    # (I - S) and (I + S)^-1 commute
    assert (eye - s) @ inverse(eye + s) == inverse(eye + s) @ (eye - s)
