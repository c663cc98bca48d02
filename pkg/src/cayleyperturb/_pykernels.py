"""Pure-Python/numpy implementations of the hot kernels.

Used when the compiled ``_kernels`` extension is unavailable (or when
``CAYLEYPERTURB_PURE_PYTHON`` is set).  Signatures and results match the
compiled module exactly up to floating-point rounding.
"""
import math

import numpy as np


def lu_factor(a):
    """Partially pivoted LU of a copy of ``a``.

    Returns ``(lu, piv, sign)`` where ``piv[k]`` is the row swapped with row
    ``k`` at step ``k`` and ``sign`` is the permutation parity.  Zero pivots
    are left in place; callers decide what counts as singular.
    """
    lu = np.array(a, dtype=np.float64, order="C", copy=True)
    n = lu.shape[0]
    piv = np.arange(n, dtype=np.intp)
    sign = 1
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        piv[k] = p
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            sign = -sign
        pivot = lu[k, k]
        if pivot == 0.0:
            continue
        lu[k + 1:, k] /= pivot
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, piv, sign


def lu_solve(lu, piv, b):
    x = np.array(b, dtype=np.float64, order="C", copy=True)
    n = lu.shape[0]
    for k in range(n):
        p = piv[k]
        if p != k:
            x[[k, p]] = x[[p, k]]
    for k in range(n):
        x[k + 1:] -= np.outer(lu[k + 1:, k], x[k])
    for k in range(n - 1, -1, -1):
        x[k] /= lu[k, k]
        x[:k] -= np.outer(lu[:k, k], x[k])
    return x


def lu_det(a):
    lu, _, sign = lu_factor(a)
    return float(sign * np.prod(np.diag(lu)))


def min_abs_pivot(a):
    if a.shape[0] == 0:
        return math.inf
    lu, _, _ = lu_factor(a)
    return float(np.min(np.abs(np.diag(lu))))


def householder_qr(a):
    """Householder QR.  Returns ``(q, r)`` with ``a = q @ r``."""
    r = np.array(a, dtype=np.float64, order="C", copy=True)
    n, m = r.shape
    q = np.eye(n)
    for k in range(min(n - 1, m)):
        x = r[k:, k]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        v = x.copy()
        v[0] += math.copysign(alpha, x[0])
        v /= np.linalg.norm(v)
        r[k:, k:] -= 2.0 * np.outer(v, v @ r[k:, k:])
        q[:, k:] -= 2.0 * np.outer(q[:, k:] @ v, v)
    return q, r


def jacobi_eigh(a, tol, max_sweeps):
    """Cyclic Jacobi eigen-decomposition of a symmetric matrix.

    Returns ``(w, v)`` with ``a @ v[:, i] == w[i] * v[:, i]``; eigenvalues
    are not sorted.
    """
    a = np.array(a, dtype=np.float64, order="C", copy=True)
    n = a.shape[0]
    v = np.eye(n)
    scale = np.sqrt(np.sum(a * a))
    if scale == 0.0:
        return np.zeros(n), v
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum((a - np.diag(np.diag(a))) ** 2))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                h = a[q, q] - a[p, p]
                if abs(h) + 100.0 * abs(apq) == abs(h):
                    t = apq / h
                else:
                    theta = h / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q]
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :]
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return np.diag(a).copy(), v


def bareiss_det(rows):
    """Exact determinant of an integer matrix given as a list of row lists."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        mk = m[k]
        akk = mk[k]
        for i in range(k + 1, n):
            mi = m[i]
            aik = mi[k]
            for j in range(k + 1, n):
                mi[j] = (akk * mi[j] - aik * mk[j]) // prev
        prev = akk
    if n == 0:
        return 1
    return sign * m[n - 1][n - 1]
