"""Pure-NumPy fallback for the symmetric tridiagonal eigensolver.

Same algorithm as the compiled backend (`_tridiag_cy`): eigenvalues by
Sturm-sequence bisection (one bracket per requested index, all brackets
advanced together so each bisection round is a single vectorized pivot
recurrence), eigenvectors by inverse iteration on the shifted matrix
factored with partial pivoting.  The two backends must stay numerically
interchangeable; `tests/test_kernels.py` compares them directly.
"""

from __future__ import annotations

import numpy as np

_EPS = float(np.finfo(np.float64).eps)
_TINY = float(np.finfo(np.float64).tiny)

BACKEND_NAME = "python"

_MAX_BISECT_ROUNDS = 140
_MAX_INV_ITER = 5


def _lcg_vector(n: int, seed: int) -> np.ndarray:
    """Deterministic start vector for inverse iteration (31-bit LCG)."""
    out = np.empty(n)
    state = (seed ^ 0x5DEECE66) & 0x7FFFFFFF
    if state == 0:
        state = 12345
    for i in range(n):
        state = (1103515245 * state + 12345) & 0x7FFFFFFF
        out[i] = state / 2147483647.0 - 0.5
    return out


def _sturm_counts(diag, off2, sigmas, pivmin):
    """Number of eigenvalues strictly below each shift in `sigmas`."""
    counts = np.zeros(sigmas.shape[0], dtype=np.int64)
    q = diag[0] - sigmas
    np.copyto(q, -pivmin, where=np.abs(q) < pivmin)
    counts += q < 0.0
    for i in range(1, diag.shape[0]):
        q = (diag[i] - sigmas) - off2[i - 1] / q
        np.copyto(q, -pivmin, where=np.abs(q) < pivmin)
        counts += q < 0.0
    return counts


def _bisect_values(diag, off2, k, pivmin, norm):
    n = diag.shape[0]
    e = np.sqrt(off2)
    radius = np.zeros(n)
    radius[:-1] += e
    radius[1:] += e
    lo = float(np.min(diag - radius)) - 2.0 * _EPS * norm - _TINY
    hi = float(np.max(diag + radius)) + 2.0 * _EPS * norm + _TINY

    lower = np.full(k, lo)
    upper = np.full(k, hi)
    targets = np.arange(1, k + 1)
    floor = _EPS * norm + 2.0 * _TINY
    for _ in range(_MAX_BISECT_ROUNDS):
        width = upper - lower
        thresh = 4.0 * _EPS * np.maximum(np.abs(lower), np.abs(upper)) + floor
        active = width > thresh
        if not active.any():
            break
        mid = 0.5 * (lower[active] + upper[active])
        ge = _sturm_counts(diag, off2, mid, pivmin) >= targets[active]
        ua = upper[active]
        la = lower[active]
        ua[ge] = mid[ge]
        la[~ge] = mid[~ge]
        upper[active] = ua
        lower[active] = la
    return np.maximum.accumulate(0.5 * (lower + upper))


def _factor_shifted(diag, off, lam, pivmin):
    """LU with partial pivoting of (T - lam*I); T symmetric tridiagonal."""
    n = diag.shape[0]
    d = diag - lam
    dl = off.copy()
    du = off.copy()
    du2 = np.zeros(n - 2) if n > 2 else np.zeros(0)
    ipiv = np.zeros(max(n - 1, 0), dtype=np.int8)
    for i in range(n - 1):
        if abs(d[i]) >= abs(dl[i]):
            if abs(d[i]) < pivmin:
                d[i] = -pivmin if d[i] <= 0.0 else pivmin
            fact = dl[i] / d[i]
            dl[i] = fact
            d[i + 1] -= fact * du[i]
            if i < n - 2:
                du2[i] = 0.0
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
    if abs(d[n - 1]) < pivmin:
        d[n - 1] = -pivmin if d[n - 1] <= 0.0 else pivmin
    return dl, d, du, du2, ipiv


def _solve_factored(fact, b):
    dl, d, du, du2, ipiv = fact
    n = d.shape[0]
    x = b.copy()
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
    return x


def _residual_inf(diag, off, lam, v):
    n = diag.shape[0]
    r = (diag - lam) * v
    r[:-1] += off * v[1:]
    r[1:] += off * v[:-1]
    return float(np.max(np.abs(r)))


def tridiag_eigh_smallest(diag, off, k, seed=20240313):
    """k smallest eigenpairs of the symmetric tridiagonal matrix (diag, off).

    Returns ``(values, vectors)`` with `values` nondecreasing of shape (k,)
    and `vectors` of shape (n, k), columns of unit 2-norm.
    """
    diag = np.ascontiguousarray(diag, dtype=np.float64)
    off = np.ascontiguousarray(off, dtype=np.float64)
    n = diag.shape[0]
    if off.shape[0] != max(n - 1, 0):
        raise ValueError("offdiagonal length must be n-1")
    if not 1 <= k <= n:
        raise ValueError("k out of range")
    if n == 1:
        return diag[:1].copy(), np.ones((1, 1))

    off2 = off * off
    norm = float(np.max(np.abs(diag)) + 2.0 * np.max(np.abs(off)))
    norm = max(norm, _TINY)
    pivmin = max(_TINY, _EPS * _EPS * max(float(off2.max()), 1.0))

    values = _bisect_values(diag, off2, k, pivmin, norm)

    ortol = 1e-3 * norm
    lu_pivmin = _EPS * norm
    vectors = np.empty((n, k))
    prev_shift = -np.inf
    shifts = np.empty(k)
    for j in range(k):
        lam = values[j]
        # split numerically coincident shifts so inverse iteration can
        # pick distinct members of a cluster
        if j > 0 and lam - prev_shift <= 10.0 * _EPS * norm:
            lam = prev_shift + 10.0 * _EPS * norm
        prev_shift = lam
        shifts[j] = lam

        fact = _factor_shifted(diag, off, lam, lu_pivmin)
        group = [i for i in range(j) if values[j] - values[i] <= ortol]
        v = _lcg_vector(n, seed + 997 * j)
        v /= np.linalg.norm(v)
        for _ in range(_MAX_INV_ITER):
            w = _solve_factored(fact, v)
            nw = float(np.linalg.norm(w))
            if not np.isfinite(nw) or nw == 0.0:
                v = _lcg_vector(n, seed + 997 * j + 1)
                v /= np.linalg.norm(v)
                continue
            w /= nw
            for i in group:
                w -= np.dot(vectors[:, i], w) * vectors[:, i]
            nw = float(np.linalg.norm(w))
            if nw < 0.1:
                v = _lcg_vector(n, seed + 997 * j + 1)
                v /= np.linalg.norm(v)
                continue
            w /= nw
            v = w
            if _residual_inf(diag, off, values[j], v) <= 1e-10 * norm:
                break
        vectors[:, j] = v
    return values, vectors
