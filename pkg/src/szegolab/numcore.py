"""Shared numerical kernels: quadrature, bracketed root finding, and the
generalized symmetric-tridiagonal eigensolver used by every solver module."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .kernels import tridiag_eigh_smallest

_EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [a, b] with n intervals (n+1 nodes)."""

    a: float
    b: float
    n: int

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError("grid requires a < b")
        if self.n < 4:
            raise ValueError("grid requires n >= 4")

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.n + 1)

    @property
    def midpoints(self) -> np.ndarray:
        return self.a + (np.arange(self.n) + 0.5) * self.h


@dataclass
class EigenPair:
    value: float
    vector: np.ndarray


def _sample(f: Callable, xs: np.ndarray) -> np.ndarray:
    try:
        ys = np.asarray(f(xs), dtype=float)
        if ys.shape != xs.shape:
            raise TypeError
    except (TypeError, ValueError):
        ys = np.array([float(f(x)) for x in xs])
    return ys


def integrate(f: Callable, a: float, b: float, n: int) -> float:
    """Composite Simpson approximation of the integral of f over (a, b).

    n must be even and >= 2; the error is O(n^-4) for C^4 integrands and
    the rule is exact (to round-off) on cubics.
    """
    if not a <= b:
        raise ValueError("integrate requires a <= b")
    if n < 2 or n % 2 != 0:
        raise ValueError("integrate requires even n >= 2")
    if a == b:
        return 0.0
    xs = np.linspace(a, b, n + 1)
    ys = _sample(f, xs)
    if not np.all(np.isfinite(ys)):
        raise ValueError("non-finite integrand")
    return simpson_samples(ys, (b - a) / n)


def simpson_samples(values: Sequence[float], h: float) -> float:
    """Composite Simpson on equispaced samples.

    An odd interval count is handled with a closing 3/8 block, keeping the
    O(h^4) order everywhere.
    """
    ys = np.asarray(values, dtype=float)
    m = ys.shape[0] - 1
    if m < 2:
        raise ValueError("need at least 3 samples")
    if m % 2 == 0:
        core, tail = ys, 0.0
    else:
        # Simpson 3/8 on the last three intervals
        core = ys[: m - 2]
        tail = 3.0 * h / 8.0 * (ys[m - 3] + 3.0 * ys[m - 2] + 3.0 * ys[m - 1] + ys[m])
    s = core[0] + core[-1] + 4.0 * np.sum(core[1:-1:2]) + 2.0 * np.sum(core[2:-2:2])
    return float(h / 3.0 * s + tail)


def find_root(f: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    """Bisection root of f on [lo, hi]; requires a sign change.

    Returns the midpoint of the final bracket, whose width is at most
    `tol` (or at the limit of float spacing if tol is below it).
    """
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    if not lo < hi:
        raise ValueError("bracket invalid")
    flo = float(f(lo))
    fhi = float(f(hi))
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if not (np.isfinite(flo) and np.isfinite(fhi)) or flo * fhi > 0.0:
        raise ValueError("bracket invalid")
    for _ in range(256):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol or mid <= lo or mid >= hi:
            break
        fm = float(f(mid))
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def sample_derivative(values: Sequence[float], h: float) -> np.ndarray:
    """Derivative of equispaced samples: centered O(h^2) in the interior,
    one-sided O(h^4) five-point stencils at the two boundary nodes."""
    ys = np.asarray(values, dtype=float)
    if ys.shape[0] < 5:
        raise ValueError("need at least 5 samples")
    d = np.empty_like(ys)
    d[1:-1] = (ys[2:] - ys[:-2]) / (2.0 * h)
    d[0] = (-25.0 * ys[0] + 48.0 * ys[1] - 36.0 * ys[2] + 16.0 * ys[3] - 3.0 * ys[4]) / (12.0 * h)
    d[-1] = (25.0 * ys[-1] - 48.0 * ys[-2] + 36.0 * ys[-3] - 16.0 * ys[-4] + 3.0 * ys[-5]) / (12.0 * h)
    return d


def boundary_slope(values: Sequence[float], h: float, side: str) -> float:
    """One-sided O(h^4) slope at the left or right end of a sample array."""
    ys = np.asarray(values, dtype=float)
    if side == "left":
        return float(
            (-25.0 * ys[0] + 48.0 * ys[1] - 36.0 * ys[2] + 16.0 * ys[3] - 3.0 * ys[4]) / (12.0 * h)
        )
    if side == "right":
        return float(
            (25.0 * ys[-1] - 48.0 * ys[-2] + 36.0 * ys[-3] - 16.0 * ys[-4] + 3.0 * ys[-5])
            / (12.0 * h)
        )
    raise ValueError("side must be 'left' or 'right'")


def tridiag_general_eigs(diag, offdiag, massdiag, k: int) -> list[EigenPair]:
    """First k eigenpairs of A x = lambda B x, ascending.

    A is symmetric tridiagonal (diag, offdiag) and B = diag(massdiag) with
    positive entries.  Internally reduced to a standard problem by the
    symmetric similarity B^{-1/2} A B^{-1/2}; eigenvalues come from
    Sturm-sequence bisection, eigenvectors from inverse iteration with a
    fixed deterministic start, and the returned vectors are B-orthonormal.
    """
    d = np.ascontiguousarray(diag, dtype=np.float64)
    e = np.ascontiguousarray(offdiag, dtype=np.float64)
    b = np.ascontiguousarray(massdiag, dtype=np.float64)
    n = d.shape[0]
    if b.shape[0] != n or e.shape[0] != max(n - 1, 0):
        raise ValueError("inconsistent tridiagonal system sizes")
    if not 1 <= k <= n:
        raise ValueError("k out of range")
    if not np.all(np.isfinite(d)) or not np.all(np.isfinite(e)) or not np.all(np.isfinite(b)):
        raise ValueError("non-finite matrix entry")
    if np.any(b <= 0.0):
        raise ValueError("mass matrix not positive")

    sq = np.sqrt(b)
    c_diag = d / b
    c_off = e / (sq[:-1] * sq[1:]) if n > 1 else e
    values, z = tridiag_eigh_smallest(c_diag, c_off, k)
    x = z / sq[:, None]
    # columns are unit vectors in z, hence B-orthonormal in x; tidy up round-off
    x /= np.sqrt(np.sum(b[:, None] * x * x, axis=0))
    return [EigenPair(float(values[j]), x[:, j].copy()) for j in range(k)]
