"""Weighted rearrangements on radially symmetric sets.

Sets are finite unions of disjoint annuli and functions are constant on
each annulus, so distribution functions, monotone rearrangements, and the
Hardy-Littlewood chain are exact finite computations (sorting plus
measure bookkeeping).  The measure is d(gamma) = e^{h(|x|)} dx.

The trial-profile machinery extends the first k = 1 ball eigenfunction w
constantly past the ball radius,

    G(r) = w(r) inside, w(r*) outside,
    N(r) = G'(r)^2 + (N-1) G(r)^2 / r^2,   D(r) = G(r)^2,

with N strictly decreasing and D nondecreasing; integrating both over a
set and over the ball of equal measure yields the comparison bound
mu_1(Omega) <= int N / int D with equality exactly at the ball.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicSpline

from .numcore import find_root, simpson_samples
from .radialnd import RadialProblem, mu1_ball, solve_radial
from .weights import RadialWeight

_MASS_TOL = 1e-13
COMPARISON_TOL = 1e-9


def _gamma_half(x: float) -> float:
    """Gamma at positive integer or half-integer arguments by recursion."""
    if x == 0.5:
        return math.sqrt(math.pi)
    if x == 1.0:
        return 1.0
    if x < 0.5 or (2.0 * x) != int(2.0 * x):
        raise ValueError("argument must be a positive multiple of 1/2")
    return (x - 1.0) * _gamma_half(x - 1.0)


def unit_ball_volume(dim: int) -> float:
    return math.pi ** (dim / 2.0) / _gamma_half(dim / 2.0 + 1.0)


# ---------------------------------------------------------------------------
# sets and cell functions

@dataclass(frozen=True)
class AnnularSet:
    """Disjoint union of open annuli (r_in, r_out), sorted outward."""

    dim: int
    annuli: tuple

    def __post_init__(self):
        prev_out = 0.0
        for i, (r_in, r_out) in enumerate(self.annuli):
            if not 0.0 <= r_in < r_out:
                raise ValueError("annulus requires 0 <= r_in < r_out")
            if i > 0 and r_in < prev_out:
                raise ValueError("annuli must be disjoint and sorted")
            prev_out = r_out

    @property
    def outer_radius(self) -> float:
        return self.annuli[-1][1] if self.annuli else 0.0


@dataclass(frozen=True)
class CellFunction:
    """One value per annulus of the supporting set."""

    support: AnnularSet
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.support.annuli):
            raise ValueError("need one value per annulus")
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError("cell values must be finite")


def annular_set(dim: int, annuli) -> AnnularSet:
    return AnnularSet(dim, tuple((float(a), float(b)) for a, b in annuli))


def cell_function(support: AnnularSet, values) -> CellFunction:
    return CellFunction(support, tuple(float(v) for v in values))


def annular_set_from_json(data, dim: int) -> AnnularSet:
    return annular_set(dim, [(cell["r_in"], cell["r_out"]) for cell in data])


def cell_function_from_json(data, dim: int) -> CellFunction:
    support = annular_set_from_json(data, dim)
    return cell_function(support, [cell.get("value", 0.0) for cell in data])


# ---------------------------------------------------------------------------
# measures

def ball_measure(rw: RadialWeight, r: float, quad_n: int = 4096) -> float:
    """gamma(B_r) = N omega_N int_0^r e^{h(s)} s^{N-1} ds by quadrature."""
    if r < 0.0:
        raise ValueError("radius must be nonnegative")
    if r == 0.0:
        return 0.0
    N = rw.dim
    xs = np.linspace(0.0, r, quad_n + 1)
    ys = np.exp(np.asarray(rw.h(xs), dtype=float)) * xs ** (N - 1)
    return N * unit_ball_volume(N) * simpson_samples(ys, r / quad_n)


def measure_density(rw: RadialWeight, r: float) -> float:
    """d/dr of ball_measure."""
    N = rw.dim
    return N * unit_ball_volume(N) * math.exp(float(rw.h(r))) * r ** (N - 1)


def set_measure(omega: AnnularSet, rw: RadialWeight) -> float:
    if omega.dim != rw.dim:
        raise ValueError("dimension mismatch")
    return sum(ball_measure(rw, b) - ball_measure(rw, a) for a, b in omega.annuli)


def cell_masses(u: CellFunction, rw: RadialWeight) -> np.ndarray:
    return np.array([ball_measure(rw, b) - ball_measure(rw, a) for a, b in u.support.annuli])


def star_radius(rw: RadialWeight, mass: float) -> float:
    """Radius r* with gamma(B_{r*}) = mass, to near machine precision."""
    if mass < 0.0:
        raise ValueError("mass must be nonnegative")
    if mass == 0.0:
        return 0.0
    hi = 1.0
    for _ in range(200):
        if ball_measure(rw, hi) >= mass:
            break
        hi *= 2.0
    else:
        raise ValueError("mass not attainable")
    r = find_root(lambda s: ball_measure(rw, s) - mass, 0.0, hi, 1e-6 * hi)
    for _ in range(60):
        err = ball_measure(rw, r) - mass
        if abs(err) <= _MASS_TOL * max(1.0, mass):
            break
        r -= err / measure_density(rw, r)
    return r


# ---------------------------------------------------------------------------
# step functions, distribution, rearrangements

@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant function on consecutive intervals between edges.

    closed="left": value at an edge belongs to the interval starting there
    (right-continuous); closed="right": to the interval ending there.
    Beyond the last edge the final level persists.
    """

    edges: tuple
    levels: tuple
    closed: str = "left"

    def __post_init__(self):
        if len(self.edges) != len(self.levels) + 1:
            raise ValueError("need one more edge than levels")
        if self.closed not in ("left", "right"):
            raise ValueError("closed must be 'left' or 'right'")

    def __call__(self, t):
        ts = np.asarray(t, dtype=float)
        side = "right" if self.closed == "left" else "left"
        idx = np.searchsorted(np.asarray(self.edges), ts, side=side) - 1
        idx = np.clip(idx, 0, len(self.levels) - 1)
        out = np.asarray(self.levels, dtype=float)[idx]
        return float(out) if np.ndim(t) == 0 else out

    def integral(self, power: int = 1) -> float:
        e = np.asarray(self.edges)
        lv = np.asarray(self.levels, dtype=float)
        return float(np.sum(lv**power * np.diff(e)))


def _sorted_cells(u: CellFunction, rw: RadialWeight):
    """(|values| descending, masses) over the cells of u."""
    masses = cell_masses(u, rw)
    vals = np.abs(np.asarray(u.values, dtype=float))
    order = np.argsort(-vals, kind="stable")
    return vals[order], masses[order]


def distribution(u: CellFunction, rw: RadialWeight) -> StepFunction:
    """t -> gamma({|u| > t}): nonincreasing, right-continuous step function."""
    vals, masses = _sorted_cells(u, rw)
    total = float(np.sum(masses))
    edges = [0.0]
    levels = []
    running = total
    # walk thresholds upward through the distinct positive values
    for v in sorted(set(float(x) for x in vals)):
        drop = float(np.sum(masses[vals == v]))
        if v == 0.0:
            running -= drop
            continue
        levels.append(running)
        edges.append(v)
        running -= drop
    levels.append(0.0)
    edges.append(edges[-1] + 1.0 if len(edges) == 1 else edges[-1] * 2.0 + 1.0)
    return StepFunction(tuple(edges), tuple(levels), closed="left")


def decreasing_rearrangement(u: CellFunction, rw: RadialWeight) -> StepFunction:
    """u*(s) = inf{t >= 0 : gamma({|u| > t}) <= s} on (0, gamma(support)]."""
    vals, masses = _sorted_cells(u, rw)
    edges = [0.0]
    levels = []
    for v, m in zip(vals, masses):
        if levels and levels[-1] == float(v):
            edges[-1] += float(m)
        else:
            levels.append(float(v))
            edges.append(edges[-1] + float(m))
    return StepFunction(tuple(edges), tuple(levels), closed="left")


def increasing_rearrangement(u: CellFunction, rw: RadialWeight) -> StepFunction:
    """u_*(s) = u*(gamma(support) - s) on [0, gamma(support))."""
    star = decreasing_rearrangement(u, rw)
    total = star.edges[-1]
    edges = tuple(total - e for e in reversed(star.edges))
    return StepFunction(edges, tuple(reversed(star.levels)), closed="right")


def star_rearrangement(u: CellFunction, rw: RadialWeight) -> CellFunction:
    """The radially decreasing rearrangement of |u| on the ball of equal
    measure, as a cell function over nested annuli."""
    vals, masses = _sorted_cells(u, rw)
    radii = [0.0]
    running = 0.0
    for m in masses:
        running += float(m)
        radii.append(star_radius(rw, running))
    annuli = [(radii[i], radii[i + 1]) for i in range(len(masses))]
    return cell_function(annular_set(u.support.dim, annuli), vals)


@dataclass
class HardyLittlewoodReport:
    lhs: float
    mid: float
    rhs: float
    ok: bool


def _step_product_integral(f: StepFunction, g: StepFunction) -> float:
    edges = np.union1d(np.asarray(f.edges), np.asarray(g.edges))
    mids = 0.5 * (edges[:-1] + edges[1:])
    return float(np.sum(f(mids) * g(mids) * np.diff(edges)))


def hardy_littlewood_check(u: CellFunction, v: CellFunction, rw: RadialWeight) -> HardyLittlewoodReport:
    """int u* v_* ds <= int |u v| dgamma <= int u* v* ds on shared cells."""
    if u.support != v.support:
        raise ValueError("incompatible supports")
    masses = cell_masses(u, rw)
    mid = float(
        np.sum(np.abs(np.asarray(u.values) * np.asarray(v.values)) * masses)
    )
    ustar = decreasing_rearrangement(u, rw)
    vstar = decreasing_rearrangement(v, rw)
    vlow = increasing_rearrangement(v, rw)
    lhs = _step_product_integral(ustar, vlow)
    rhs = _step_product_integral(ustar, vstar)
    ok = lhs <= mid + 1e-12 and mid <= rhs + 1e-12
    return HardyLittlewoodReport(lhs, mid, rhs, ok)


# ---------------------------------------------------------------------------
# trial profile and the comparison bound

@dataclass
class TrialProfile:
    R_star: float
    G: Callable
    Nfun: Callable
    Dfun: Callable
    nu1: float


def trial_profile(rw: RadialWeight, R_star: float, n: int = 4000) -> TrialProfile:
    """Constant extension of the first k = 1 ball eigenfunction, with the
    gradient-energy density N(r) and mass density D(r) of the associated
    directional trial functions.

    Raises RuntimeError when the sampled N fails to decrease strictly or
    D fails to be nondecreasing (a solver-accuracy signal).
    """
    spec = solve_radial(RadialProblem(rw, R_star, 1, n), 1)
    nu1 = float(spec.eigenvalues[0])
    w = spec.eigenfunctions[:, 0]
    # cap value via a zero-slope quadratic fit at the outer boundary
    w_star = (9.0 * w[-1] - w[-2]) / 8.0
    rs = np.concatenate(([0.0], spec.nodes, [R_star]))
    ws = np.concatenate(([0.0], w, [w_star]))
    spline = CubicSpline(rs, ws)
    dspline = spline.derivative()
    dim = rw.dim

    def G(r):
        r = np.asarray(r, dtype=float)
        return np.where(r < R_star, spline(np.minimum(r, R_star)), w_star)

    def dG(r):
        r = np.asarray(r, dtype=float)
        return np.where(r < R_star, dspline(np.minimum(r, R_star)), 0.0)

    def Nfun(r):
        r = np.asarray(r, dtype=float)
        ratio = np.where(r > 0.0, G(r) / np.where(r > 0.0, r, 1.0), dG(r))
        return dG(r) ** 2 + (dim - 1) * ratio**2

    def Dfun(r):
        return G(np.asarray(r, dtype=float)) ** 2

    # probe spacing R*/256: wide enough that the true decrease of N
    # dominates the O(h^2) eigenvector noise near the origin
    sample = np.concatenate(
        (np.linspace(0.0, R_star, 257)[1:], np.linspace(R_star, 2.0 * R_star, 65)[1:])
    )
    Ns = Nfun(sample)
    Ds = Dfun(sample)
    scale_n = float(np.max(np.abs(Ns)))
    if not np.all(np.diff(Ns) < 1e-10 * scale_n):
        raise RuntimeError("profile monotonicity failed")
    if not np.all(np.diff(Ds) >= -1e-12 * float(np.max(Ds))):
        raise RuntimeError("profile monotonicity failed")
    return TrialProfile(R_star, G, Nfun, Dfun, nu1)


@dataclass
class RayleighBoundReport:
    bound: float
    mu1_star: float
    numerator_cmp: bool
    denominator_cmp: bool
    num_omega: float
    num_star: float
    den_omega: float
    den_star: float


def _profile_integral(f: Callable, omega: AnnularSet, rw: RadialWeight, quad_n: int) -> float:
    N = rw.dim
    total = 0.0
    for a, b in omega.annuli:
        xs = np.linspace(a, b, quad_n + 1)
        ys = f(xs) * np.exp(np.asarray(rw.h(xs), dtype=float)) * xs ** (N - 1)
        total += simpson_samples(ys, (b - a) / quad_n)
    return N * unit_ball_volume(N) * total


def rayleigh_bound(omega: AnnularSet, rw: RadialWeight, n: int = 4000,
                   quad_n: int = 2048) -> RayleighBoundReport:
    """Trial-function bound int N / int D over omega, compared against the
    ball of equal measure and against mu_1 of that ball."""
    if not omega.annuli:
        raise ValueError("empty set")
    mass = set_measure(omega, rw)
    r_star = star_radius(rw, mass)
    profile = trial_profile(rw, r_star, n)
    ball = annular_set(rw.dim, [(0.0, r_star)])

    num_omega = _profile_integral(profile.Nfun, omega, rw, quad_n)
    den_omega = _profile_integral(profile.Dfun, omega, rw, quad_n)
    num_star = _profile_integral(profile.Nfun, ball, rw, quad_n)
    den_star = _profile_integral(profile.Dfun, ball, rw, quad_n)

    bound = num_omega / den_omega
    mu1_star = mu1_ball(rw, r_star, n)
    tol_n = COMPARISON_TOL * max(1.0, abs(num_star))
    tol_d = COMPARISON_TOL * max(1.0, abs(den_star))
    numerator_cmp = num_omega <= num_star + tol_n
    denominator_cmp = den_omega >= den_star - tol_d
    # the two comparisons force bound <= mu1(ball); equality iff omega is the ball
    if bound > mu1_star + 1e-5 * max(1.0, mu1_star):
        raise RuntimeError("trial bound exceeded the ball eigenvalue")
    return RayleighBoundReport(
        bound, mu1_star, numerator_cmp, denominator_cmp,
        num_omega, num_star, den_omega, den_star,
    )
