"""Sliding-interval study of the first nontrivial Neumann eigenvalue.

The interval (a, b(a)) moves along the axis with fixed weighted length
d = F(b) - F(a).  For even weights the eigenvalue map is mirror-symmetric
around the centered position, and its derivative has one sign on each
side of it: nonnegative for weights increasing on the positive axis,
nonpositive for decreasing ones, strictly so when the weight is not
constant on the interval.

The derivative is computed in transformed coordinates, where the moving
interval is a plain translation: with w_1 the first eigenfunction of the
flat Dirichlet problem on (F(a), F(a)+d), normalized to int w_1^2 m = 1,

    d mu_1 / da = q(a) * (w_1'(alpha)^2 - w_1'(beta)^2),

and is cross-checked against a centered finite difference of mu_1(a).
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, TextIO

import numpy as np

from .sl1d import boundary_slopes, solve_flat_dirichlet, solve_neumann
from .weights import Weight1D, cumulative, inverse_cumulative

SOLVER_TOL = 1e-8
SIGN_TOL = 1e-8
SYMMETRY_RTOL = 1e-5
FD_STEP_FACTOR = 1e-4

INCREASING = "increasing"
DECREASING = "decreasing"
CONSTANT = "constant"


@dataclass(frozen=True)
class SweepConfig:
    weight: Weight1D
    d: float
    a_min: float
    a_max: float
    steps: int
    n: int

    def __post_init__(self):
        if not self.weight.even:
            raise ValueError("sweep requires an even weight")
        if not 0.0 < self.d < self.weight.total_mass:
            raise ValueError("budget must lie in (0, total mass)")
        if not self.a_min < self.a_max:
            raise ValueError("need a_min < a_max")
        if self.steps < 3:
            raise ValueError("need at least 3 steps")


@dataclass
class SweepPoint:
    a: float
    b: float
    mu1: float
    dmu1_analytic: float
    dmu1_fd: float


@dataclass
class SweepResult:
    config: SweepConfig
    points: list[SweepPoint]
    symmetric_halfwidth: float


@dataclass
class SweepLawReport:
    symmetry_ok: bool
    sign_ok: bool
    strict_ok: bool
    monotone_class: str
    max_symmetry_defect: float
    min_abs_derivative: float


def partner_endpoint(w: Weight1D, a: float, d: float) -> float:
    """Right endpoint b with F(b) = F(a) + d."""
    if not 0.0 < d < w.total_mass:
        raise ValueError("budget must lie in (0, total mass)")
    target = cumulative(w, a) + d
    if math.isfinite(w.total_mass) and target >= 0.5 * w.total_mass:
        raise ValueError("budget unattainable")
    return inverse_cumulative(w, target)


def symmetric_halfwidth(w: Weight1D, d: float) -> float:
    """Halfwidth of the centered interval holding weighted length d."""
    if not w.even:
        raise ValueError("requires an even weight")
    if not 0.0 < d < w.total_mass:
        raise ValueError("budget must lie in (0, total mass)")
    return inverse_cumulative(w, 0.5 * d)


def shape_derivative(w: Weight1D, a: float, d: float, n: int) -> float:
    """d mu_1 / da at position a, from the flat problem's boundary slopes."""
    alpha = cumulative(w, a)
    spec = solve_flat_dirichlet(w, alpha, alpha + d, 1, n)
    s = boundary_slopes(spec)
    return float(w.q(a)) * (s.left**2 - s.right**2)


def _mu1(w: Weight1D, a: float, d: float, n: int) -> tuple[float, float]:
    b = partner_endpoint(w, a, d)
    spec = solve_neumann(w, a, b, 1, n)
    return b, float(spec.eigenvalues[1])


def _thread_budget(steps: int) -> int:
    env = os.environ.get("SZEGO_LAB_THREADS", "").strip()
    if env:
        cap = int(env)
        if cap < 1:
            raise ValueError("SZEGO_LAB_THREADS must be a positive integer")
    else:
        cap = os.cpu_count() or 1
    return max(1, min(cap, steps))


def sweep_mu1(cfg: SweepConfig) -> SweepResult:
    """mu_1(a) with analytic and finite-difference derivatives at each step.

    Points are independent and evaluated concurrently; assembly preserves
    the order of the a-grid.
    """
    w = cfg.weight
    a_grid = np.linspace(cfg.a_min, cfg.a_max, cfg.steps)

    def at(a: float) -> SweepPoint:
        b, mu = _mu1(w, a, cfg.d, cfg.n)
        dmu = shape_derivative(w, a, cfg.d, cfg.n)
        step = FD_STEP_FACTOR * (b - a)
        _, mu_p = _mu1(w, a + step, cfg.d, cfg.n)
        _, mu_m = _mu1(w, a - step, cfg.d, cfg.n)
        return SweepPoint(a, b, mu, dmu, (mu_p - mu_m) / (2.0 * step))

    with ThreadPoolExecutor(max_workers=_thread_budget(cfg.steps)) as pool:
        points = list(pool.map(at, a_grid))
    return SweepResult(cfg, points, symmetric_halfwidth(w, cfg.d))


def _monotone_class(w: Weight1D, span: float) -> str:
    ts = np.linspace(span * 1e-3, span, 41)
    dq = np.asarray(w.dq(ts), dtype=float)
    scale = float(np.max(np.abs(np.asarray(w.q(ts), dtype=float))))
    tol = 1e-12 * max(1.0, scale)
    if np.all(np.abs(dq) <= tol):
        return CONSTANT
    if np.all(dq >= -tol):
        return INCREASING
    if np.all(dq <= tol):
        return DECREASING
    raise ValueError("weight is not monotone on the positive axis")


def verify_sweep_laws(cfg: SweepConfig) -> SweepLawReport:
    """Check the three sliding-interval laws on a sweep.

    symmetry_ok: mu_1(a) agrees with mu_1 at the mirrored position -b(a)
    to 1e-5 relative.  sign_ok: the derivative has the sign dictated by
    the weight's monotonicity class at every sampled a right of the
    centered position.  strict_ok: the derivative magnitude clears ten
    times the solver tolerance there (fails for constant weights).
    """
    w = cfg.weight
    result = sweep_mu1(cfg)
    # classify on the whole coordinate range the sweep touches
    span = max(
        abs(cfg.a_min), abs(cfg.a_max), result.symmetric_halfwidth,
        *(abs(p.b) for p in result.points),
    )
    klass = _monotone_class(w, span)

    defect = 0.0
    for p in result.points:
        mu_mirror = _mu1(w, -p.b, cfg.d, cfg.n)[1]
        defect = max(defect, abs(p.mu1 - mu_mirror) / p.mu1)
    symmetry_ok = defect <= SYMMETRY_RTOL

    right = [p for p in result.points if p.a > -result.symmetric_halfwidth]
    derivs = np.array([p.dmu1_analytic for p in right])
    if klass == INCREASING:
        sign_ok = bool(np.all(derivs >= -SIGN_TOL))
    elif klass == DECREASING:
        sign_ok = bool(np.all(derivs <= SIGN_TOL))
    else:
        sign_ok = bool(np.all(np.abs(derivs) <= SIGN_TOL))

    min_abs = float(np.min(np.abs(derivs))) if len(right) else 0.0
    strict_ok = klass != CONSTANT and sign_ok and min_abs > 10.0 * SOLVER_TOL
    return SweepLawReport(symmetry_ok, sign_ok, strict_ok, klass, defect, min_abs)


def write_sweep_csv(result: SweepResult, out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["a", "b", "mu1", "dmu1_analytic", "dmu1_fd"])
    for p in result.points:
        writer.writerow(
            [format(v, ".17g") for v in (p.a, p.b, p.mu1, p.dmu1_analytic, p.dmu1_fd)]
        )


def sweep_summary(result: SweepResult, report: Optional[SweepLawReport] = None) -> dict:
    out = {
        "symmetric_halfwidth": result.symmetric_halfwidth,
        "budget": result.config.d,
        "steps": result.config.steps,
        "resolution": result.config.n,
        "weight": result.config.weight.kind.as_dict(),
    }
    if report is not None:
        out["symmetry_ok"] = report.symmetry_ok
        out["sign_ok"] = report.sign_ok
        out["strict_ok"] = report.strict_ok
        out["monotone_class"] = report.monotone_class
    return out


def write_sweep_summary(result: SweepResult, report: Optional[SweepLawReport], out: TextIO) -> None:
    json.dump(sweep_summary(result, report), out, indent=2)
    out.write("\n")
