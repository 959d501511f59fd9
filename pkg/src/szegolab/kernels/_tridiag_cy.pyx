# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled core for the symmetric tridiagonal eigensolver.

Sturm-sequence bisection for eigenvalues, inverse iteration with a
partially pivoted LU factorization for eigenvectors.  Mirrors the
pure-NumPy backend in `_tridiag_py`; the heavy loops run without the
GIL so concurrent solves scale across threads.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt, INFINITY

cnp.import_array()

BACKEND_NAME = "cython"

cdef double _EPS = np.finfo(np.float64).eps
cdef double _TINY = np.finfo(np.float64).tiny

cdef int _MAX_BISECT_ROUNDS = 140
cdef int _MAX_INV_ITER = 5


cdef void _lcg_fill(double[::1] out, long long seed) noexcept nogil:
    cdef long long state = (seed ^ 0x5DEECE66) & 0x7FFFFFFF
    cdef Py_ssize_t i
    if state == 0:
        state = 12345
    for i in range(out.shape[0]):
        state = (1103515245 * state + 12345) & 0x7FFFFFFF
        out[i] = state / 2147483647.0 - 0.5


cdef long _sturm_count(double[::1] diag, double[::1] off2, double sigma,
                       double pivmin) noexcept nogil:
    cdef long cnt = 0
    cdef Py_ssize_t i
    cdef double q = diag[0] - sigma
    if fabs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        cnt += 1
    for i in range(1, diag.shape[0]):
        q = (diag[i] - sigma) - off2[i - 1] / q
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            cnt += 1
    return cnt


cdef double _bisect_one(double[::1] diag, double[::1] off2, long target,
                        double lo, double hi, double pivmin,
                        double floor) noexcept nogil:
    cdef double lower = lo
    cdef double upper = hi
    cdef double mid, thresh, amax
    cdef int it
    for it in range(_MAX_BISECT_ROUNDS):
        amax = fabs(lower)
        if fabs(upper) > amax:
            amax = fabs(upper)
        thresh = 4.0 * _EPS * amax + floor
        if upper - lower <= thresh:
            break
        mid = 0.5 * (lower + upper)
        if _sturm_count(diag, off2, mid, pivmin) >= target:
            upper = mid
        else:
            lower = mid
    return 0.5 * (lower + upper)


cdef void _factor_shifted(double[::1] diag, double[::1] off, double lam,
                          double pivmin, double[::1] dl, double[::1] d,
                          double[::1] du, double[::1] du2,
                          signed char[::1] ipiv) noexcept nogil:
    cdef Py_ssize_t n = diag.shape[0]
    cdef Py_ssize_t i
    cdef double fact, tmp
    for i in range(n):
        d[i] = diag[i] - lam
    for i in range(n - 1):
        dl[i] = off[i]
        du[i] = off[i]
        ipiv[i] = 0
    for i in range(n - 2):
        du2[i] = 0.0
    for i in range(n - 1):
        if fabs(d[i]) >= fabs(dl[i]):
            if fabs(d[i]) < pivmin:
                d[i] = -pivmin if d[i] <= 0.0 else pivmin
            fact = dl[i] / d[i]
            dl[i] = fact
            d[i + 1] -= fact * du[i]
        else:
            fact = d[i] / dl[i]
            d[i] = dl[i]
            dl[i] = fact
            tmp = du[i]
            du[i] = d[i + 1]
            d[i + 1] = tmp - fact * d[i + 1]
            if i < n - 2:
                du2[i] = du[i + 1]
                du[i + 1] = -fact * du[i + 1]
            ipiv[i] = 1
    if fabs(d[n - 1]) < pivmin:
        d[n - 1] = -pivmin if d[n - 1] <= 0.0 else pivmin


cdef void _solve_factored(double[::1] dl, double[::1] d, double[::1] du,
                          double[::1] du2, signed char[::1] ipiv,
                          double[::1] x) noexcept nogil:
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t i
    cdef double tmp
    for i in range(n - 1):
        if ipiv[i] == 0:
            x[i + 1] -= dl[i] * x[i]
        else:
            tmp = x[i]
            x[i] = x[i + 1]
            x[i + 1] = tmp - dl[i] * x[i]
    x[n - 1] /= d[n - 1]
    if n > 1:
        x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i]


cdef double _norm2(double[::1] v) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(v.shape[0]):
        s += v[i] * v[i]
    return sqrt(s)


cdef double _residual_inf(double[::1] diag, double[::1] off, double lam,
                          double[::1] v) noexcept nogil:
    cdef Py_ssize_t n = diag.shape[0]
    cdef Py_ssize_t i
    cdef double r, worst = 0.0
    for i in range(n):
        r = (diag[i] - lam) * v[i]
        if i > 0:
            r += off[i - 1] * v[i - 1]
        if i < n - 1:
            r += off[i] * v[i + 1]
        if fabs(r) > worst:
            worst = fabs(r)
    return worst


def tridiag_eigh_smallest(diag, off, k, seed=20240313):
    """k smallest eigenpairs of the symmetric tridiagonal matrix (diag, off).

    Returns ``(values, vectors)`` with `values` nondecreasing of shape (k,)
    and `vectors` of shape (n, k), columns of unit 2-norm.
    """
    cdef cnp.ndarray[double, ndim=1] d_arr = np.ascontiguousarray(diag, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] e_arr = np.ascontiguousarray(off, dtype=np.float64)
    cdef Py_ssize_t n = d_arr.shape[0]
    cdef long kk = k
    if e_arr.shape[0] != max(n - 1, 0):
        raise ValueError("offdiagonal length must be n-1")
    if not 1 <= kk <= n:
        raise ValueError("k out of range")
    if n == 1:
        return d_arr[:1].copy(), np.ones((1, 1))

    cdef double[::1] dv = d_arr
    cdef double[::1] ev = e_arr
    cdef cnp.ndarray[double, ndim=1] off2_arr = e_arr * e_arr
    cdef double[::1] off2 = off2_arr

    cdef double norm = float(np.max(np.abs(d_arr)) + 2.0 * np.max(np.abs(e_arr)))
    if norm < _TINY:
        norm = _TINY
    cdef double pivmin = _EPS * _EPS * max(float(off2_arr.max()), 1.0)
    if pivmin < _TINY:
        pivmin = _TINY

    cdef cnp.ndarray[double, ndim=1] rad = np.zeros(n)
    rad[: n - 1] += np.abs(e_arr)
    rad[1:] += np.abs(e_arr)
    cdef double lo = float(np.min(d_arr - rad)) - 2.0 * _EPS * norm - _TINY
    cdef double hi = float(np.max(d_arr + rad)) + 2.0 * _EPS * norm + _TINY
    cdef double floor = _EPS * norm + 2.0 * _TINY

    cdef cnp.ndarray[double, ndim=1] values = np.empty(kk)
    cdef double[::1] vals = values
    cdef Py_ssize_t j, i, it
    with nogil:
        for j in range(kk):
            vals[j] = _bisect_one(dv, off2, j + 1, lo, hi, pivmin, floor)
        for j in range(1, kk):
            if vals[j] < vals[j - 1]:
                vals[j] = vals[j - 1]

    cdef cnp.ndarray[double, ndim=2] vectors = np.empty((n, kk), order="F")
    cdef double[::1, :] vecs = vectors
    cdef cnp.ndarray[double, ndim=1] work = np.empty(5 * n)
    cdef double[::1] dl = work[:n]
    cdef double[::1] dfac = work[n : 2 * n]
    cdef double[::1] du = work[2 * n : 3 * n]
    cdef double[::1] du2 = work[3 * n : 4 * n]
    cdef double[::1] v = work[4 * n : 5 * n]
    cdef cnp.ndarray[signed char, ndim=1] ipiv_arr = np.zeros(n, dtype=np.int8)
    cdef signed char[::1] ipiv = ipiv_arr

    cdef double ortol = 1e-3 * norm
    cdef double lu_pivmin = _EPS * norm
    cdef double prev_shift = -INFINITY
    cdef double lam, nw, proj
    cdef long long base_seed = seed
    cdef bint retry
    cdef Py_ssize_t it2

    with nogil:
        for j in range(kk):
            lam = vals[j]
            if j > 0 and lam - prev_shift <= 10.0 * _EPS * norm:
                lam = prev_shift + 10.0 * _EPS * norm
            prev_shift = lam

            _factor_shifted(dv, ev, lam, lu_pivmin, dl, dfac, du, du2, ipiv)
            _lcg_fill(v, base_seed + 997 * j)
            nw = _norm2(v)
            for i in range(n):
                v[i] /= nw
            for it in range(_MAX_INV_ITER):
                _solve_factored(dl, dfac, du, du2, ipiv, v)
                nw = _norm2(v)
                retry = not (nw == nw) or nw == 0.0 or nw == INFINITY
                if retry:
                    _lcg_fill(v, base_seed + 997 * j + 1)
                    nw = _norm2(v)
                for i in range(n):
                    v[i] /= nw
                if retry:
                    continue
                # re-orthogonalize inside clusters of nearby eigenvalues
                for i in range(j):
                    if vals[j] - vals[i] <= ortol:
                        proj = 0.0
                        for it2 in range(n):
                            proj += vecs[it2, i] * v[it2]
                        for it2 in range(n):
                            v[it2] -= proj * vecs[it2, i]
                nw = _norm2(v)
                if nw < 0.1:
                    _lcg_fill(v, base_seed + 997 * j + 1)
                    nw = _norm2(v)
                    for i in range(n):
                        v[i] /= nw
                    continue
                for i in range(n):
                    v[i] /= nw
                if _residual_inf(dv, ev, vals[j], v) <= 1e-10 * norm:
                    break
            for i in range(n):
                vecs[i, j] = v[i]

    return values, np.ascontiguousarray(vectors)
