"""One-dimensional weights q and radial exponent profiles h.

A `Weight1D` carries the positive weight, its derivative, the cumulative
transform F(x) = int_0^x q, the inverse transform, and the transformed
density m(y) = 1/q(F^{-1}(y))^2 that turns the reciprocal-weight Dirichlet
problem into a flat one.  A `RadialWeight` carries h, h', h'' and the
dimension, plus the admissibility test h'(r) > -(N-1)/r, h''(r) >= 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.special import erf, erfi

from .numcore import integrate

_EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class WeightKind:
    """Catalog tag plus parameters of a weight."""

    tag: str
    params: tuple = ()

    def as_dict(self) -> dict:
        return {"kind": self.tag, "params": dict(self.params)}


@dataclass(frozen=True)
class Weight1D:
    """Positive C^2 weight on the line.

    `cdf`, when given, is the analytic cumulative F; otherwise F falls back
    to Simpson quadrature at resolution `quad_n`.  `total_mass` is the full
    integral of q over the line (may be `math.inf`).
    """

    q: Callable
    dq: Callable
    even: bool
    total_mass: float
    kind: WeightKind
    cdf: Optional[Callable] = None
    quad_n: int = field(default=4096, repr=False)

    def __post_init__(self):
        for t in (-2.0, -0.5, 0.0, 0.5, 2.0):
            if not float(self.q(t)) > 0.0:
                raise ValueError("weight must be positive")
        if self.even:
            for t in (0.25, 1.0, 1.75):
                a, b = float(self.q(t)), float(self.q(-t))
                if abs(a - b) > 1e-12 * max(1.0, abs(a)):
                    raise ValueError("weight flagged even is not symmetric")


@dataclass(frozen=True)
class RadialWeight:
    """Radial exponent profile h(r) with derivatives, in dimension dim >= 2."""

    h: Callable
    dh: Callable
    d2h: Callable
    dim: int
    kind: WeightKind

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("radial weights require dim >= 2")

    def density(self, r):
        """e^{h(r)}, vectorized."""
        return np.exp(self.h(np.asarray(r, dtype=float)))


@dataclass(frozen=True)
class AdmissibilityReport:
    ok: bool
    first_violation: Optional[float]


# ---------------------------------------------------------------------------
# catalog

def constant_weight(c0: float = 1.0) -> Weight1D:
    if not (math.isfinite(c0) and c0 > 0.0):
        raise ValueError("constant weight requires finite c0 > 0")
    return Weight1D(
        q=lambda t: np.full_like(np.asarray(t, dtype=float), c0) if np.ndim(t) else c0,
        dq=lambda t: np.zeros_like(np.asarray(t, dtype=float)) if np.ndim(t) else 0.0,
        even=True,
        total_mass=math.inf,
        kind=WeightKind("constant", (("c0", c0),)),
        cdf=lambda x: c0 * np.asarray(x, dtype=float),
    )


def gaussian_weight() -> Weight1D:
    sq2 = math.sqrt(2.0)
    amp = math.sqrt(math.pi / 2.0)
    return Weight1D(
        q=lambda t: np.exp(-0.5 * np.square(np.asarray(t, dtype=float))),
        dq=lambda t: -np.asarray(t, dtype=float)
        * np.exp(-0.5 * np.square(np.asarray(t, dtype=float))),
        even=True,
        total_mass=math.sqrt(2.0 * math.pi),
        kind=WeightKind("gaussian"),
        cdf=lambda x: amp * erf(np.asarray(x, dtype=float) / sq2),
    )


def anti_gaussian_weight() -> Weight1D:
    amp = math.sqrt(math.pi) / 2.0
    return Weight1D(
        q=lambda t: np.exp(np.square(np.asarray(t, dtype=float))),
        dq=lambda t: 2.0
        * np.asarray(t, dtype=float)
        * np.exp(np.square(np.asarray(t, dtype=float))),
        even=True,
        total_mass=math.inf,
        kind=WeightKind("anti_gaussian"),
        cdf=lambda x: amp * erfi(np.asarray(x, dtype=float)),
    )


def custom_weight(q, dq, even=False, total_mass=math.inf, cdf=None, quad_n=4096) -> Weight1D:
    return Weight1D(q=q, dq=dq, even=even, total_mass=total_mass,
                    kind=WeightKind("custom"), cdf=cdf, quad_n=quad_n)


def radial_square_weight(dim: int) -> RadialWeight:
    return RadialWeight(
        h=lambda r: np.square(np.asarray(r, dtype=float)),
        dh=lambda r: 2.0 * np.asarray(r, dtype=float),
        d2h=lambda r: np.full_like(np.asarray(r, dtype=float), 2.0) if np.ndim(r) else 2.0,
        dim=dim,
        kind=WeightKind("radial_square", (("dim", dim),)),
    )


def radial_zero_weight(dim: int) -> RadialWeight:
    zero = lambda r: np.zeros_like(np.asarray(r, dtype=float)) if np.ndim(r) else 0.0
    return RadialWeight(h=zero, dh=zero, d2h=zero, dim=dim,
                        kind=WeightKind("radial_zero", (("dim", dim),)))


def custom_radial_weight(h, dh, d2h, dim: int) -> RadialWeight:
    return RadialWeight(h=h, dh=dh, d2h=d2h, dim=dim, kind=WeightKind("custom"))


# ---------------------------------------------------------------------------
# cumulative transform and friends

def cumulative(w: Weight1D, x) -> float:
    """Signed cumulative mass F(x) = int_0^x q(t) dt, F(0) = 0."""
    if w.cdf is not None:
        out = w.cdf(x)
        return float(out) if np.ndim(x) == 0 else np.asarray(out, dtype=float)
    if np.ndim(x) == 0:
        return _cumulative_quad(w, float(x))
    return np.array([_cumulative_quad(w, float(t)) for t in np.asarray(x, dtype=float)])


def _cumulative_quad(w: Weight1D, x: float) -> float:
    if x == 0.0:
        return 0.0
    if x > 0.0:
        return integrate(w.q, 0.0, x, w.quad_n)
    return -integrate(w.q, x, 0.0, w.quad_n)


def _range_halfwidth(w: Weight1D) -> float:
    # attainable F-range is (-c_minus, c_plus); for the even catalog both are c/2
    if math.isinf(w.total_mass):
        return math.inf
    return 0.5 * w.total_mass


def inverse_cumulative(w: Weight1D, y: float) -> float:
    """x with F(x) = y (machine-accurate bracketed bisection).

    Raises ValueError("mass out of range") when y is not attainable.
    """
    return float(inverse_cumulative_many(w, np.array([float(y)]))[0])


def inverse_cumulative_many(w: Weight1D, ys: np.ndarray) -> np.ndarray:
    """Vectorized inverse of the cumulative transform."""
    ys = np.asarray(ys, dtype=float)
    if ys.size == 0:
        return ys.copy()
    half = _range_halfwidth(w)
    if w.even and np.any(np.abs(ys) >= half):
        raise ValueError("mass out of range")

    lo, hi = -1.0, 1.0
    ymin, ymax = float(np.min(ys)), float(np.max(ys))
    for _ in range(300):
        if cumulative(w, lo) <= ymin:
            break
        lo *= 2.0
    else:
        raise ValueError("mass out of range")
    for _ in range(300):
        if cumulative(w, hi) >= ymax:
            break
        hi *= 2.0
    else:
        raise ValueError("mass out of range")

    lower = np.full_like(ys, lo)
    upper = np.full_like(ys, hi)
    for _ in range(200):
        width = upper - lower
        thresh = 4.0 * _EPS * np.maximum(1.0, np.maximum(np.abs(lower), np.abs(upper)))
        active = width > thresh
        if not active.any():
            break
        mid = 0.5 * (lower[active] + upper[active])
        below = np.asarray(cumulative(w, mid)) < ys[active]
        la = lower[active]
        ua = upper[active]
        la[below] = mid[below]
        ua[~below] = mid[~below]
        lower[active] = la
        upper[active] = ua
    return 0.5 * (lower + upper)


def transformed_density(w: Weight1D, y: float) -> float:
    """m(y) = q(F^{-1}(y))^{-2}; the density of the flat Dirichlet problem."""
    x = inverse_cumulative(w, y)
    return 1.0 / float(w.q(x)) ** 2


def transformed_density_many(w: Weight1D, ys: np.ndarray) -> np.ndarray:
    xs = inverse_cumulative_many(w, ys)
    return 1.0 / np.square(np.asarray(w.q(xs), dtype=float))


# ---------------------------------------------------------------------------
# admissibility of radial profiles

def admissible_radial(rw: RadialWeight, r_max: float, samples: int = 64) -> AdmissibilityReport:
    """Check h'(r) > -(N-1)/r and h''(r) >= 0 on a log-uniform sample of (0, r_max]."""
    if not r_max > 0.0:
        raise ValueError("r_max must be positive")
    if samples < 16:
        raise ValueError("need at least 16 samples")
    rs = np.geomspace(r_max * 1e-8, r_max, samples)
    dh = np.asarray(rw.dh(rs), dtype=float)
    d2h = np.asarray(rw.d2h(rs), dtype=float)
    slope_ok = dh > -(rw.dim - 1) / rs
    convex_ok = d2h >= -1e-12 * np.maximum(1.0, np.abs(d2h))
    bad = ~(slope_ok & convex_ok)
    if bad.any():
        return AdmissibilityReport(ok=False, first_violation=float(rs[np.argmax(bad)]))
    return AdmissibilityReport(ok=True, first_violation=None)
