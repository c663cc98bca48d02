"""End-to-end acceptance criteria.

Each test records one PASS/FAIL line in the "acceptance criteria" section
of the pytest terminal summary.
"""
import itertools
import time
from fractions import Fraction

import numpy as np
import pytest
import sympy

from cayleyperturb import (
    Matrix,
    SkewSymmetric,
    cayley_transform,
    determinant,
    fact_e,
    inverse_cayley,
    kahan_enumerate,
    kahan_identity_check,
    monomial_structure_check,
    normal_form,
    obstruction_check,
    rotation_sqrt,
    sign_assign,
    sign_matrix_sum_check,
    signed_cayley_rep,
    squared_cayley_rep,
)
from cayleyperturb.generators import (
    gen_haar_orthogonal,
    gen_haar_rotation,
    gen_integer,
    gen_singular,
    gen_skew,
    rng,
)
from cayleyperturb.linalg import block_diag, rotation2
from cayleyperturb.normal_form import BlockKind

from oracles import gauss_det

SEED = 20240101


def _rotation_corpus():
    """Haar rotations, -I at even n, and conjugated mixes of pi-rotations."""
    corpus = []
    for i in range(200):
        n = 2 + i % 11
        corpus.append((f"haar n={n} #{i}", gen_haar_rotation(n, SEED + i)))
    for n in range(2, 13, 2):
        corpus.append((f"-I n={n}", Matrix.identity(n) * -1.0))
    g = rng(SEED)
    for i in range(60):
        n_pi = int(g.integers(1, 4))
        blocks = [rotation2(np.pi) for _ in range(n_pi)]
        for _ in range(int(g.integers(0, 3))):
            blocks.append(rotation2(float(g.uniform(0.1, 3.0))))
        blocks += [Matrix([[1.0]])] * int(g.integers(0, 3))
        if i % 3 == 0:
            blocks.append(Matrix([[-1.0, 0.0], [0.0, -1.0]]))
        d = block_diag(blocks, "float")
        q = gen_haar_orthogonal(d.n, SEED + 1000 + i)
        corpus.append((f"pi-mix n={d.n} #{i}", q @ d @ q.T))
    return corpus


CORPUS = _rotation_corpus()


def _report(log, label, failures, elapsed, budget=None):
    ok = not failures and (budget is None or elapsed < budget)
    detail = f"({elapsed:.2f}s"
    detail += f", budget {budget}s)" if budget else ")"
    if failures:
        detail += f" first failure: {failures[0]}"
    print(f"{'PASS' if ok else 'FAIL'} {label} {detail}")
    log(label, ok, detail)
    return ok


def test_criterion_1_cayley_round_trip(acceptance_log):
    g = rng(SEED)
    failures = []
    start = time.perf_counter()
    for i in range(500):
        n = int(g.integers(2, 31))
        s = gen_skew(n, SEED + i, scale=float(g.uniform(0.1, 3.0)))
        r = cayley_transform(s)
        orth = (r.T @ r).max_abs_diff(Matrix.identity(n))
        det_err = abs(determinant(r) - 1.0)
        back = inverse_cayley(r).max_abs_diff(s)
        if orth > 1e-10 or det_err > 1e-10 or back > 1e-9:
            failures.append((n, orth, det_err, back))
    elapsed = time.perf_counter() - start
    assert _report(acceptance_log, "1 Cayley round trip", failures, elapsed, 10)


def test_criterion_2_squared_reconstruction(acceptance_log):
    failures = []
    start = time.perf_counter()
    for label, r in CORPUS:
        rep = squared_cayley_rep(r)
        c = cayley_transform(rep.s)
        resid = (c @ c).max_abs_diff(r)
        unobstructed = not obstruction_check(rotation_sqrt(r)).obstructed
        if resid > 1e-9 or not unobstructed:
            failures.append((label, resid, unobstructed))
    elapsed = time.perf_counter() - start
    assert _report(acceptance_log, "2 squared Cayley reconstruction", failures, elapsed, 30)


def test_criterion_3_normal_form(acceptance_log):
    failures = []
    start = time.perf_counter()
    for label, r in CORPUS:
        nf = normal_form(r)
        resid = nf.reconstruct().max_abs_diff(r)
        angles_ok = all(0 < b.angle <= np.pi for b in nf.blocks if b.kind is BlockKind.ROTATION)
        parity_ok = nf.count(BlockKind.MINUS_ONE) % 2 == 0
        if resid > 1e-9 or not angles_ok or not parity_ok:
            failures.append((label, resid, angles_ok, parity_ok))
    elapsed = time.perf_counter() - start
    assert _report(acceptance_log, "3 normal form", failures, elapsed)


def test_criterion_4_signed_coverage(acceptance_log):
    failures = []
    start = time.perf_counter()
    for i in range(200):
        n = 2 + i % 11
        r = gen_haar_orthogonal(n, SEED + 5000 + i, det=-1)
        assert determinant(r) < 0
        rep = signed_cayley_rep(r)
        resid = rep.evaluate().max_abs_diff(r)
        e = rep.signs.as_diagonal()
        if resid > 1e-9 or not (e @ e) == Matrix.identity(n, "rational"):
            failures.append((n, resid))
    elapsed = time.perf_counter() - start
    assert _report(acceptance_log, "4 signed Cayley coverage of O(n)", failures, elapsed)


def _random_c(g, n):
    c = []
    for _ in range(n):
        sign = 1 if g.integers(0, 2) else -1
        if g.random() < 0.3:
            c.append(sign * Fraction(1, 10 ** 8))
        else:
            c.append(sign * Fraction(int(g.integers(1, 20)), int(g.integers(1, 20))))
    return c


def test_criterion_5_exact_soundness(acceptance_log):
    g = rng(SEED)
    failures = []
    start = time.perf_counter()
    for i in range(500):
        n = int(g.integers(1, 9))
        if i % 2:
            a = gen_integer(n, SEED + i)
        else:
            a = gen_singular(n, int(g.integers(0, n)), SEED + i)
        c = _random_c(g, n)
        report = sign_assign(a, c)
        perturbed = report.perturbed(a).tolist()
        minors = [gauss_det([row[:k] for row in perturbed[:k]]) for k in range(1, n + 1)]
        exact = list(report.minor_values) == minors
        if not exact or any(m == 0 for m in minors):
            failures.append((i, n, report.signs))
    elapsed = time.perf_counter() - start
    assert _report(acceptance_log, "5 exact soundness of sign_assign", failures, elapsed, 60)


def test_criterion_6_fact_e_oracle(acceptance_log):
    g = rng(SEED + 6)
    failures = []
    start = time.perf_counter()
    for i in range(1000):
        n = int(g.integers(1, 7))
        if i % 4 == 0:
            a = gen_singular(n, int(g.integers(0, n)), SEED + 7000 + i)
        else:
            a = gen_integer(n, SEED + 7000 + i)
        survivors = kahan_enumerate(a)
        e = fact_e(a)
        if not survivors or e not in survivors:
            failures.append((i, n, e))
    elapsed = time.perf_counter() - start
    assert _report(acceptance_log, "6 fact_e within the enumerated survivors", failures, elapsed, 60)


def test_criterion_7_kahan_identities(acceptance_log):
    g = rng(SEED + 7)
    failures = []
    start = time.perf_counter()

    def rand_entry():
        return Fraction(int(g.integers(-9, 10)), int(g.integers(1, 6)))

    for i in range(200):
        n = int(g.integers(1, 8))
        a = [[rand_entry() for _ in range(n)] for _ in range(n)]
        j = int(g.integers(0, n))
        b = [row[:] for row in a]
        for row in b:
            row[j] = rand_entry()
        lhs, rhs = kahan_identity_check(Matrix(a, "rational"), Matrix(b, "rational"), j)
        ref = gauss_det([[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)])
        if lhs != rhs or lhs != ref:
            failures.append((i, n, j))
    for n in range(0, 13):
        total = sign_matrix_sum_check(n)
        if not total.is_zero():
            failures.append(("sum", n))
    for n in range(1, 7):
        brute = [sum(col) for col in zip(*itertools.product((1, -1), repeat=n))]
        if any(brute):
            failures.append(("brute sum", n))
    elapsed = time.perf_counter() - start
    assert _report(acceptance_log, "7 column identity and sign-matrix sum", failures, elapsed)


def test_criterion_8_monomial_structure(acceptance_log):
    g = rng(SEED + 8)
    failures = []
    start = time.perf_counter()
    for n in range(1, 5):
        for trial in range(5):
            a = [[Fraction(int(g.integers(-5, 6)), int(g.integers(1, 4))) for _ in range(n)]
                 for _ in range(n)]
            multilinear, top = monomial_structure_check(Matrix(a, "rational"))
            cs = sympy.symbols(f"c1:{n + 1}")
            poly = sympy.Poly((sympy.diag(*cs) + sympy.Matrix(a)).det(), *cs)
            sym_multilinear = all(max(m) <= 1 for m in poly.monoms())
            sym_top = poly.coeff_monomial(sympy.Mul(*cs))
            if not (multilinear and top == 1 and sym_multilinear and sym_top == 1):
                failures.append((n, trial, multilinear, top))
    elapsed = time.perf_counter() - start
    assert _report(acceptance_log, "8 multilinear det(C + A), unit top coefficient", failures, elapsed)


def test_skew_generator_is_exactly_skew():
    # sanity guard for criterion 1's inputs
    s = gen_skew(7, SEED)
    assert isinstance(s, SkewSymmetric)
    assert np.array_equal(s.array, -s.array.T)
