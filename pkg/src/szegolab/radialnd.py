"""Radial eigenproblems on the ball: the angular-index family

    -(e^h r^{N-1} f')' + kbar e^h r^{N-3} f = mu e^h r^{N-1} f  on (0, R),

with separation constant kbar = k(k+N-2).  The purely radial branch
(k = 0, eigenvalues tau_n, tau_0 = 0) carries zero-flux conditions at
both ends; for k >= 1 (eigenvalues nu_n) the r^{-2} potential enforces
f(0) = 0 and the outer condition is again zero flux, f'(R) = 0.

The grid is cell-centered: nodes at r_i = (i + 1/2) h and fluxes on the
faces r = j h, so the face at r = 0 carries no flux for N >= 2 and both
boundary closures are natural.  The first nontrivial Neumann eigenvalue
of the ball equals nu_1(R), which lies strictly below tau_1(R) for every
admissible profile.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .numcore import tridiag_general_eigs
from .weights import RadialWeight, admissible_radial

GAP_TOL = 1e-8


@dataclass(frozen=True)
class RadialProblem:
    rw: RadialWeight
    R: float
    k: int
    n: int

    def __post_init__(self):
        if not self.R > 0.0:
            raise ValueError("need R > 0")
        if self.k < 0:
            raise ValueError("angular index k must be >= 0")
        if self.n < 64:
            raise ValueError("need n >= 64")

    @property
    def separation_constant(self) -> float:
        return float(self.k * (self.k + self.rw.dim - 2))


@dataclass
class RadialSpectrum:
    problem: RadialProblem
    eigenvalues: np.ndarray
    eigenfunctions: np.ndarray  # (n, count) samples on the cell centers
    nodes: np.ndarray

    @property
    def weight_values(self) -> np.ndarray:
        rw = self.problem.rw
        return np.exp(np.asarray(rw.h(self.nodes), dtype=float)) * self.nodes ** (rw.dim - 1)


@dataclass
class SpectralGapReport:
    nu1: float
    tau1: float
    gap_ok: bool


def _check_admissible(rw: RadialWeight, R: float) -> None:
    report = admissible_radial(rw, R, samples=64)
    if not report.ok:
        raise ValueError(
            "radial weight inadmissible: needs h'(r) > -(N-1)/r and h''(r) >= 0, "
            f"violated near r = {report.first_violation:.3g}"
        )


def solve_radial(p: RadialProblem, count: int) -> RadialSpectrum:
    """First `count` eigenpairs of the radial problem with angular index k.

    Eigenfunctions are normalized to int_0^R f^2 e^h r^{N-1} dr = 1 and
    fixed positive at the innermost node.
    """
    if count < 1:
        raise ValueError("need count >= 1")
    if count >= p.n / 4:
        raise ValueError("insufficient resolution")
    _check_admissible(p.rw, p.R)

    rw = p.rw
    N = rw.dim
    n = p.n
    h = p.R / n
    nodes = (np.arange(n) + 0.5) * h
    faces = np.arange(1, n) * h  # interior faces; r = 0 and r = R carry no flux

    pf = np.exp(np.asarray(rw.h(faces), dtype=float)) * faces ** (N - 1)
    eh = np.exp(np.asarray(rw.h(nodes), dtype=float))
    mass = eh * nodes ** (N - 1)
    kbar = p.separation_constant

    diag = np.zeros(n)
    diag[:-1] += pf
    diag[1:] += pf
    diag /= h * h
    diag += kbar * eh * nodes ** (N - 3)
    off = -pf / (h * h)

    pairs = tridiag_general_eigs(diag, off, mass, count)
    values = np.array([q.value for q in pairs])
    vecs = np.column_stack([q.vector for q in pairs])
    # midpoint-rule normalization matches the cell-centered discretization
    vecs /= np.sqrt(h * np.sum(mass[:, None] * vecs * vecs, axis=0))
    for j in range(count):
        if vecs[0, j] < 0.0:
            vecs[:, j] = -vecs[:, j]
    return RadialSpectrum(p, values, vecs, nodes)


def spectral_gap(rw: RadialWeight, R: float, n: int) -> SpectralGapReport:
    """nu_1(R) versus tau_1(R) at matched resolution."""
    nu = solve_radial(RadialProblem(rw, R, 1, n), 1)
    tau = solve_radial(RadialProblem(rw, R, 0, n), 2)
    nu1 = float(nu.eigenvalues[0])
    tau1 = float(tau.eigenvalues[1])
    tol = GAP_TOL * max(1.0, abs(tau1))
    return SpectralGapReport(nu1, tau1, gap_ok=nu1 < tau1 - 10.0 * tol)


def rayleigh_quotient(spec: RadialSpectrum, mode: int = 0) -> float:
    """Conservative quadrature of the Rayleigh quotient of a computed mode:
    face-midpoint gradient flux plus cell sums of the potential and mass."""
    p = spec.problem
    rw = p.rw
    N = rw.dim
    n = p.n
    h = p.R / n
    f = spec.eigenfunctions[:, mode]
    faces = np.arange(1, n) * h
    pf = np.exp(np.asarray(rw.h(faces), dtype=float)) * faces ** (N - 1)
    eh = np.exp(np.asarray(rw.h(spec.nodes), dtype=float))
    grad = np.sum(pf * ((f[1:] - f[:-1]) / h) ** 2) * h
    pot = p.separation_constant * np.sum(eh * spec.nodes ** (N - 3) * f * f) * h
    mass = np.sum(eh * spec.nodes ** (N - 1) * f * f) * h
    return float((grad + pot) / mass)


def mu1_ball(rw: RadialWeight, R: float, n: int) -> float:
    """First nontrivial Neumann eigenvalue of the ball of radius R.

    Returns nu_1(R) (the k = 1 branch, which lies below tau_1) after a
    self-consistency check against the quadrature Rayleigh quotient of
    its own eigenfunction.
    """
    spec = solve_radial(RadialProblem(rw, R, 1, n), 1)
    nu1 = float(spec.eigenvalues[0])
    rq = rayleigh_quotient(spec, 0)
    if abs(nu1 - rq) > 1e-6 * abs(nu1):
        raise RuntimeError("self-consistency failure")
    return nu1


def write_radial_csv(spec: RadialSpectrum, out: TextIO) -> None:
    """CSV dump: index, r, weight, one column per eigenfunction."""
    count = spec.eigenfunctions.shape[1]
    first = 0 if spec.problem.k == 0 else 1
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["index", "r", "weight"] + [f"u{first + j}" for j in range(count)])
    wvals = spec.weight_values
    for i in range(spec.nodes.shape[0]):
        row = [str(i), format(spec.nodes[i], ".17g"), format(wvals[i], ".17g")]
        row += [format(spec.eigenfunctions[i, j], ".17g") for j in range(count)]
        writer.writerow(row)
