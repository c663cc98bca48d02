"""Both kernel implementations against numpy and against each other."""
import numpy as np
import pytest

from oracles import cofactor_det


@pytest.fixture
def gen():
    return np.random.default_rng(7)


@pytest.mark.parametrize("n", [1, 2, 5, 17, 40])
def test_lu_det_matches_numpy(kern, gen, n):
    a = gen.standard_normal((n, n))
    assert kern.lu_det(a) == pytest.approx(np.linalg.det(a), rel=1e-10)


def test_lu_factor_reconstructs(kern, gen):
    a = gen.standard_normal((9, 9))
    lu, piv, sign = kern.lu_factor(a)
    l = np.tril(lu, -1) + np.eye(9)
    u = np.triu(lu)
    pa = a.copy()
    for k, p in enumerate(piv):
        pa[[k, p]] = pa[[p, k]]
    np.testing.assert_allclose(l @ u, pa, atol=1e-12)
    assert sign in (1, -1)


def test_lu_solve(kern, gen):
    a = gen.standard_normal((12, 12)) + 12 * np.eye(12)
    b = gen.standard_normal((12, 12))
    lu, piv, _ = kern.lu_factor(a)
    np.testing.assert_allclose(a @ kern.lu_solve(lu, piv, b), b, atol=1e-10)


def test_input_not_mutated(kern, gen):
    a = gen.standard_normal((5, 5))
    keep = a.copy()
    kern.lu_factor(a)
    kern.householder_qr(a)
    kern.jacobi_eigh(a + a.T, 1e-15, 50)
    np.testing.assert_array_equal(a, keep)


def test_min_abs_pivot(kern):
    assert kern.min_abs_pivot(np.diag([1.0, 1e-14])) == 1e-14
    assert kern.min_abs_pivot(np.zeros((3, 3))) == 0.0


@pytest.mark.parametrize("n", [1, 3, 8, 25])
def test_householder_qr(kern, gen, n):
    a = gen.standard_normal((n, n))
    q, r = kern.householder_qr(a)
    np.testing.assert_allclose(q @ r, a, atol=1e-12)
    np.testing.assert_allclose(q.T @ q, np.eye(n), atol=1e-13)
    assert np.allclose(np.tril(r, -1), 0.0, atol=1e-13)


@pytest.mark.parametrize("n", [1, 2, 6, 20])
def test_jacobi_matches_eigvalsh(kern, gen, n):
    x = gen.standard_normal((n, n))
    a = x + x.T
    w, v = kern.jacobi_eigh(a, 1e-15, 100)
    np.testing.assert_allclose(np.sort(w), np.linalg.eigvalsh(a), atol=1e-12)
    np.testing.assert_allclose(a @ v, v * w, atol=1e-12)
    np.testing.assert_allclose(v.T @ v, np.eye(n), atol=1e-13)


def test_jacobi_repeated_eigenvalues(kern, gen):
    q, _ = np.linalg.qr(gen.standard_normal((6, 6)))
    a = q @ np.diag([2.0, 2.0, -1.0, -1.0, 0.5, 0.5]) @ q.T
    w, v = kern.jacobi_eigh(a, 1e-15, 100)
    np.testing.assert_allclose(a @ v, v * w, atol=1e-13)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 5])
def test_bareiss_against_cofactor(kern, gen, n):
    for _ in range(20):
        rows = gen.integers(-6, 6, endpoint=True, size=(n, n)).tolist()
        assert kern.bareiss_det(rows) == cofactor_det(rows)


def test_bareiss_zero_pivot_swap(kern):
    assert kern.bareiss_det([[0, 1], [1, 0]]) == -1
    assert kern.bareiss_det([[0, 0, 1], [0, 1, 0], [1, 0, 0]]) == -1
    assert kern.bareiss_det([[0, 1], [0, 2]]) == 0


def test_bareiss_big_integers(kern):
    big = 10 ** 30
    assert kern.bareiss_det([[big, 1], [1, big]]) == big * big - 1


def test_implementations_agree(gen):
    from cayleyperturb import _pykernels
    compiled = pytest.importorskip("cayleyperturb._kernels")
    a = gen.standard_normal((15, 15))
    assert compiled.lu_det(a) == pytest.approx(_pykernels.lu_det(a), rel=1e-12)
    s = a + a.T
    w1, _ = compiled.jacobi_eigh(s, 1e-15, 100)
    w2, _ = _pykernels.jacobi_eigh(s, 1e-15, 100)
    np.testing.assert_allclose(np.sort(w1), np.sort(w2), atol=1e-12)
