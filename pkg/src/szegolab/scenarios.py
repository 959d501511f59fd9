"""The plane counterexample: an asymmetric rectangle beating the disk.

Under the plane weight e^{x^2+y^2}, the rectangle T = (c, d) x (-c, c)
built on zeros of a Hermite-function derivative has first nontrivial
Neumann eigenvalue exactly 12 (a double eigenvalue, one factor per axis),
while the disk of equal weighted area has a strictly smaller one.  The
chain is fully quantitative:

    mu_1(disk) < k(r_T) < k(chi^{-1}(2)) = 4/((pi+2) log(1+2/pi) - 2) < 12,

with chi(r) = pi (e^{r^2} - 1) the weighted disk area and k(r) the bound
obtained from the coordinate functions x, y as trial functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import radialnd, rearrange
from .numcore import find_root
from .sl1d import solve_neumann
from .weights import anti_gaussian_weight, cumulative, radial_square_weight

HERMITE_MAX_DEGREE = 10
VERDICT_MARGIN = 0.01


def _hermite_coefficient_table(nmax: int) -> list[list[int]]:
    """Integer coefficients of H_0..H_nmax, ascending powers, via the
    recurrence H_{n+1} = 2 t H_n - 2 n H_{n-1}."""
    table = [[1], [0, 2]]
    for n in range(1, nmax):
        prev, cur = table[n - 1], table[n]
        nxt = [0] * (n + 2)
        for p, coef in enumerate(cur):
            nxt[p + 1] += 2 * coef
        for p, coef in enumerate(prev):
            nxt[p] -= 2 * n * coef
        table.append(nxt)
    return table


_HERMITE_COEFFS = _hermite_coefficient_table(HERMITE_MAX_DEGREE)


@dataclass(frozen=True)
class HermiteEval:
    """Evaluator for one physicists' Hermite polynomial and its Gaussian-
    damped companion v_n(t) = H_n(t) e^{-t^2}."""

    n: int
    coefficients: tuple

    @classmethod
    def of_degree(cls, n: int) -> "HermiteEval":
        if not 0 <= n <= HERMITE_MAX_DEGREE:
            raise ValueError(f"degree must lie in [0, {HERMITE_MAX_DEGREE}]")
        return cls(n, tuple(_HERMITE_COEFFS[n]))

    def polynomial(self, t):
        ts = np.asarray(t, dtype=float)
        out = np.zeros_like(ts)
        for coef in reversed(self.coefficients):
            out = out * ts + coef
        return float(out) if np.ndim(t) == 0 else out

    def damped(self, t):
        ts = np.asarray(t, dtype=float)
        out = self.polynomial(ts) * np.exp(-np.square(ts))
        return float(out) if np.ndim(t) == 0 else out


def hermite(n: int, t):
    """H_n(t) by the three-term recurrence (integer coefficients, n <= 10)."""
    return HermiteEval.of_degree(n).polynomial(t)


def hermite_gaussian(n: int, t):
    """v_n(t) = H_n(t) e^{-t^2}."""
    return HermiteEval.of_degree(n).damped(t)


def hermite_neumann_nodes() -> tuple[float, float]:
    """First and second positive zeros of v_5'(t), i.e. of
    8 t^6 - 60 t^4 + 90 t^2 - 15; they bracket in (0.43, 0.44) and
    (1.33, 1.34)."""
    poly = lambda t: hermite(6, t) / 8.0
    c = find_root(poly, 0.4, 0.5, 1e-12)
    d = find_root(poly, 1.3, 1.4, 1e-12)
    return c, d


def disk_mass(r: float) -> float:
    """chi(r): weighted area of the disk of radius r under e^{x^2+y^2}."""
    return math.pi * (math.exp(r * r) - 1.0)


def disk_coordinate_bound(r: float) -> float:
    """k(r): the bound on mu_1 of the weighted disk from the coordinate
    trial functions; strictly decreasing in r."""
    er = math.exp(r * r)
    return (2.0 * er - 2.0) / (r * r * er - er + 1.0)


def reference_bound_at_mass_two() -> float:
    """k at the radius of weighted disk area 2: 4/((pi+2) log(1+2/pi) - 2)."""
    return 4.0 / ((math.pi + 2.0) * math.log(1.0 + 2.0 / math.pi) - 2.0)


@dataclass
class CounterexampleReport:
    c: float
    d: float
    mu1_cd: float
    mu1_cc: float
    mu1_T: float
    gamma2_T: float
    taylor_lower_bound: float
    r_T: float
    k_rT: float
    k_at_chi_inv_2: float
    mu1_ball: float
    verdict: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _taylor_factor(t: float) -> float:
    # antiderivative of the degree-6 Taylor minorant of e^{x^2}
    return t + t**3 / 3.0 + t**5 / 10.0 + t**7 / 42.0


def run_counterexample(n: int) -> CounterexampleReport:
    """End-to-end comparison of the rectangle against the equal-mass disk.

    n is the 1D solver resolution (>= 1024).  The rectangle eigenvalue
    comes from the two factor problems: the weight separates, the product
    spectrum is the sum set, and the first nontrivial value is the
    smaller of the factor values.
    """
    if n < 1024:
        raise ValueError("need n >= 1024")
    step = "hermite nodes"
    try:
        c, d = hermite_neumann_nodes()

        step = "factor eigenvalues"
        w = anti_gaussian_weight()
        mu1_cd = float(solve_neumann(w, c, d, 1, n).eigenvalues[1])
        mu1_cc = float(solve_neumann(w, -c, c, 1, n).eigenvalues[1])
        mu1_T = min(mu1_cd, mu1_cc)

        step = "rectangle mass"
        gamma2_T = (cumulative(w, d) - cumulative(w, c)) * (2.0 * cumulative(w, c))
        taylor = (_taylor_factor(d) - _taylor_factor(c)) * (2.0 * _taylor_factor(c))

        step = "equal-mass radius"
        rw = radial_square_weight(2)
        r_T = rearrange.star_radius(rw, gamma2_T)

        step = "coordinate bounds"
        k_rT = disk_coordinate_bound(r_T)
        k_chi2 = reference_bound_at_mass_two()

        step = "ball eigenvalue"
        mu1_disk = radialnd.mu1_ball(rw, r_T, n)
    except Exception as exc:
        raise RuntimeError(f"counterexample step failed: {step}") from exc

    verdict = (
        mu1_disk < mu1_T - VERDICT_MARGIN
        and mu1_disk < k_rT < k_chi2 < 12.0
    )
    return CounterexampleReport(
        c=c, d=d, mu1_cd=mu1_cd, mu1_cc=mu1_cc, mu1_T=mu1_T,
        gamma2_T=gamma2_T, taylor_lower_bound=taylor, r_T=r_T,
        k_rT=k_rT, k_at_chi_inv_2=k_chi2, mu1_ball=mu1_disk, verdict=verdict,
    )
