# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.  Same signatures as ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt, copysign

cnp.import_array()


def lu_factor(a):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] arr = np.array(a, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] lu = arr
    cdef Py_ssize_t n = lu.shape[0]
    cdef cnp.ndarray[cnp.intp_t, ndim=1] piv_arr = np.arange(n, dtype=np.intp)
    cdef cnp.intp_t[::1] piv = piv_arr
    cdef Py_ssize_t i, j, k, p
    cdef double best, val, pivot, f, tmp
    cdef int sign = 1
    for k in range(n):
        p = k
        best = fabs(lu[k, k])
        for i in range(k + 1, n):
            val = fabs(lu[i, k])
            if val > best:
                best = val
                p = i
        piv[k] = p
        if p != k:
            for j in range(n):
                tmp = lu[k, j]
                lu[k, j] = lu[p, j]
                lu[p, j] = tmp
            sign = -sign
        pivot = lu[k, k]
        if pivot == 0.0:
            continue
        for i in range(k + 1, n):
            f = lu[i, k] / pivot
            lu[i, k] = f
            if f != 0.0:
                for j in range(k + 1, n):
                    lu[i, j] -= f * lu[k, j]
    return arr, piv_arr, sign


def lu_solve(lu_in, piv_in, b):
    cdef double[:, ::1] lu = np.ascontiguousarray(lu_in, dtype=np.float64)
    cdef cnp.intp_t[::1] piv = np.ascontiguousarray(piv_in, dtype=np.intp)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] xarr = np.array(b, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] x = xarr
    cdef Py_ssize_t n = lu.shape[0], m = x.shape[1]
    cdef Py_ssize_t i, j, k, p
    cdef double f, tmp, d
    for k in range(n):
        p = piv[k]
        if p != k:
            for j in range(m):
                tmp = x[k, j]
                x[k, j] = x[p, j]
                x[p, j] = tmp
    for k in range(n):
        for i in range(k + 1, n):
            f = lu[i, k]
            if f != 0.0:
                for j in range(m):
                    x[i, j] -= f * x[k, j]
    for k in range(n - 1, -1, -1):
        d = lu[k, k]
        for j in range(m):
            x[k, j] /= d
        for i in range(k):
            f = lu[i, k]
            if f != 0.0:
                for j in range(m):
                    x[i, j] -= f * x[k, j]
    return xarr


def lu_det(a):
    lu, _, sign = lu_factor(a)
    cdef double[:, ::1] m = lu
    cdef double d = sign
    cdef Py_ssize_t k
    for k in range(m.shape[0]):
        d *= m[k, k]
    return d


def min_abs_pivot(a):
    lu, _, _ = lu_factor(a)
    cdef double[:, ::1] m = lu
    cdef double best = float("inf")
    cdef Py_ssize_t k
    for k in range(m.shape[0]):
        if fabs(m[k, k]) < best:
            best = fabs(m[k, k])
    return best


def householder_qr(a):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] rarr = np.array(a, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] r = rarr
    cdef Py_ssize_t n = r.shape[0], m = r.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] qarr = np.eye(n)
    cdef double[:, ::1] q = qarr
    cdef double[::1] v = np.zeros(n)
    cdef Py_ssize_t i, j, k
    cdef double alpha, vnorm, dot
    for k in range(min(n - 1, m)):
        alpha = 0.0
        for i in range(k, n):
            alpha += r[i, k] * r[i, k]
        alpha = sqrt(alpha)
        if alpha == 0.0:
            continue
        for i in range(k, n):
            v[i] = r[i, k]
        v[k] += copysign(alpha, r[k, k])
        vnorm = 0.0
        for i in range(k, n):
            vnorm += v[i] * v[i]
        vnorm = sqrt(vnorm)
        for i in range(k, n):
            v[i] /= vnorm
        for j in range(k, m):
            dot = 0.0
            for i in range(k, n):
                dot += v[i] * r[i, j]
            dot *= 2.0
            for i in range(k, n):
                r[i, j] -= dot * v[i]
        for i in range(n):
            dot = 0.0
            for j in range(k, n):
                dot += q[i, j] * v[j]
            dot *= 2.0
            for j in range(k, n):
                q[i, j] -= dot * v[j]
    return qarr, rarr


def jacobi_eigh(a, double tol, int max_sweeps):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] aarr = np.array(a, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] m = aarr
    cdef Py_ssize_t n = m.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] varr = np.eye(n)
    cdef double[:, ::1] v = varr
    cdef Py_ssize_t i, p, q
    cdef int sweep
    cdef double total = 0.0, off, apq, h, theta, t, c, s, xp, xq
    for p in range(n):
        for q in range(n):
            total += m[p, q] * m[p, q]
    if total == 0.0:
        return np.zeros(n), varr
    cdef double scale = sqrt(total)
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += m[p, q] * m[p, q]
        if sqrt(off) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                if apq == 0.0:
                    continue
                h = m[q, q] - m[p, p]
                if fabs(h) + 100.0 * fabs(apq) == fabs(h):
                    t = apq / h
                else:
                    theta = h / (2.0 * apq)
                    t = copysign(1.0, theta) / (fabs(theta) + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for i in range(n):
                    xp = m[i, p]
                    xq = m[i, q]
                    m[i, p] = c * xp - s * xq
                    m[i, q] = s * xp + c * xq
                for i in range(n):
                    xp = m[p, i]
                    xq = m[q, i]
                    m[p, i] = c * xp - s * xq
                    m[q, i] = s * xp + c * xq
                m[p, q] = 0.0
                m[q, p] = 0.0
                for i in range(n):
                    xp = v[i, p]
                    xq = v[i, q]
                    v[i, p] = c * xp - s * xq
                    v[i, q] = s * xp + c * xq
    w = np.array([m[i, i] for i in range(n)], dtype=np.float64)
    return w, varr


def bareiss_det(rows):
    cdef list m = [list(r) for r in rows]
    cdef Py_ssize_t n = len(m)
    cdef Py_ssize_t i, j, k
    cdef int sign = 1
    cdef object prev = 1, akk, aik
    cdef list mk, mi
    if n == 0:
        return 1
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
    return sign * m[n - 1][n - 1]
