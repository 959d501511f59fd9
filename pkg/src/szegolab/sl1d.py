"""The three 1D eigenproblems on an interval and the maps between them.

* weighted Neumann:            -(u' q)' = mu u q,   u'(a) = u'(b) = 0
* reciprocal-weight Dirichlet: -(v'/q)' = lam v/q,  v(a) = v(b) = 0
* flat Dirichlet:              -w'' = k m(y) w on (F(a), F(b)),  w = 0

All three share one spectrum for a positive C^2 weight: v = u' q maps
Neumann eigenfunctions to Dirichlet ones, u = -v'/(lam q) maps back, and
the change of variable y = F(x) carries the Dirichlet problem onto the
flat one with density m(y) = 1/q(F^{-1}(y))^2.

Discretization is flux-form finite differences with midpoint weights,
keeping the operators symmetric with respect to the discrete weighted
inner product: Neumann by zero-flux closure (half cells at the ends),
Dirichlet by node elimination.  Eigenvalues converge at O(n^-2).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .numcore import Grid, boundary_slope, sample_derivative, simpson_samples, tridiag_general_eigs
from .weights import Weight1D, WeightKind, cumulative, transformed_density_many

NEUMANN = "neumann"
DIRICHLET = "dirichlet"


@dataclass
class Spectrum:
    grid: Grid
    weight_tag: WeightKind
    bc: str
    eigenvalues: np.ndarray
    eigenfunctions: np.ndarray  # shape (nodes, count), one column per mode
    weight_values: np.ndarray  # node samples of the spectral weight
    coord: str = "x"

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes


@dataclass(frozen=True)
class BoundarySlopes:
    left: float
    right: float


def _validate(a: float, b: float, k: int, n: int) -> None:
    if not a < b:
        raise ValueError("interval requires a < b")
    if k < 1:
        raise ValueError("need k >= 1")
    if n < 64:
        raise ValueError("need n >= 64")
    if k >= n / 4:
        raise ValueError("insufficient resolution")


def _normalize_modes(vecs: np.ndarray, node_weight: np.ndarray, h: float) -> None:
    for j in range(vecs.shape[1]):
        nrm = simpson_samples(vecs[:, j] ** 2 * node_weight, h)
        vecs[:, j] /= np.sqrt(nrm)


def solve_neumann(w: Weight1D, a: float, b: float, k: int, n: int) -> Spectrum:
    """First k+1 Neumann eigenpairs on (a, b), including mu_0 = 0.

    Eigenfunctions are normalized to int u^2 q dx = 1; the ground state is
    the positive constant and excited modes are positive at the left end.
    """
    _validate(a, b, k, n)
    grid = Grid(a, b, n)
    h = grid.h
    qm = np.asarray(w.q(grid.midpoints), dtype=float)
    qn = np.asarray(w.q(grid.nodes), dtype=float)

    diag = np.empty(n + 1)
    diag[0] = qm[0]
    diag[-1] = qm[-1]
    diag[1:-1] = qm[:-1] + qm[1:]
    diag /= h * h
    off = -qm / (h * h)
    mass = qn.copy()
    mass[0] *= 0.5
    mass[-1] *= 0.5

    pairs = tridiag_general_eigs(diag, off, mass, k + 1)
    values = np.array([p.value for p in pairs])
    vecs = np.column_stack([p.vector for p in pairs])
    _normalize_modes(vecs, qn, h)
    for j in range(k + 1):
        anchor = vecs[0, j]
        if abs(anchor) < 1e-12 * np.max(np.abs(vecs[:, j])):
            anchor = vecs[np.argmax(np.abs(vecs[:, j])), j]
        if anchor < 0.0:
            vecs[:, j] = -vecs[:, j]
    return Spectrum(grid, w.kind, NEUMANN, values, vecs, qn, coord="x")


def _dirichlet_assembly(pm: np.ndarray, node_mass: np.ndarray, h: float, k: int):
    """Eigenpairs of the eliminated-node Dirichlet system; pm holds the
    flux weight at midpoints, node_mass the spectral weight at all nodes."""
    n = pm.shape[0]
    diag = (pm[:-1] + pm[1:]) / (h * h)
    off = -pm[1:-1] / (h * h)
    pairs = tridiag_general_eigs(diag, off, node_mass[1:-1], k)
    values = np.array([p.value for p in pairs])
    vecs = np.zeros((n + 1, k))
    for j, p in enumerate(pairs):
        vecs[1:-1, j] = p.vector
    return values, vecs


def _fix_dirichlet_signs(vecs: np.ndarray, h: float) -> None:
    # ground state positive in the interior, excited states by positive
    # slope at the left endpoint
    if np.sum(vecs[:, 0]) < 0.0:
        vecs[:, 0] = -vecs[:, 0]
    for j in range(1, vecs.shape[1]):
        if boundary_slope(vecs[:, j], h, "left") < 0.0:
            vecs[:, j] = -vecs[:, j]


def solve_dirichlet_inverse_weight(w: Weight1D, a: float, b: float, k: int, n: int) -> Spectrum:
    """First k Dirichlet eigenpairs of the reciprocal-weight problem."""
    _validate(a, b, k, n)
    grid = Grid(a, b, n)
    h = grid.h
    pm = 1.0 / np.asarray(w.q(grid.midpoints), dtype=float)
    pn = 1.0 / np.asarray(w.q(grid.nodes), dtype=float)
    values, vecs = _dirichlet_assembly(pm, pn, h, k)
    _normalize_modes(vecs, pn, h)
    _fix_dirichlet_signs(vecs, h)
    return Spectrum(grid, w.kind, DIRICHLET, values, vecs, pn, coord="x")


def solve_flat_dirichlet(w: Weight1D, alpha: float, beta: float, k: int, n: int) -> Spectrum:
    """First k eigenpairs of -w'' = k m(y) w with w(alpha) = w(beta) = 0.

    The density m comes from the cumulative transform of the weight, so
    (alpha, beta) must lie inside the attainable mass range.
    """
    _validate(alpha, beta, k, n)
    grid = Grid(alpha, beta, n)
    h = grid.h
    mn = transformed_density_many(w, grid.nodes)
    pm = np.ones(n)
    values, vecs = _dirichlet_assembly(pm, mn, h, k)
    _normalize_modes(vecs, mn, h)
    _fix_dirichlet_signs(vecs, h)
    return Spectrum(grid, w.kind, DIRICHLET, values, vecs, mn, coord="y")


def neumann_to_dirichlet_map(spec: Spectrum, w: Weight1D) -> np.ndarray:
    """v = u_1' q from a Neumann spectrum; a Dirichlet eigenfunction at mu_1."""
    if spec.bc != NEUMANN or spec.eigenfunctions.shape[1] < 2:
        raise ValueError("need a Neumann spectrum with at least two eigenpairs")
    du = sample_derivative(spec.eigenfunctions[:, 1], spec.grid.h)
    return du * np.asarray(w.q(spec.nodes), dtype=float)


def dirichlet_to_neumann_map(spec: Spectrum, w: Weight1D) -> np.ndarray:
    """u = -v_1'/(lam_1 q) from a Dirichlet spectrum; a Neumann
    eigenfunction at mu = lam_1 with vanishing endpoint derivatives."""
    if spec.bc != DIRICHLET:
        raise ValueError("need a Dirichlet spectrum")
    lam1 = float(spec.eigenvalues[0])
    if lam1 <= 1e-10 * max(1.0, abs(float(spec.eigenvalues[-1]))):
        raise ValueError("degenerate eigenvalue")
    dv = sample_derivative(spec.eigenfunctions[:, 0], spec.grid.h)
    return -dv / (lam1 * np.asarray(w.q(spec.nodes), dtype=float))


def boundary_slopes(spec: Spectrum) -> BoundarySlopes:
    """O(h^4) one-sided slopes of the first eigenfunction at both ends."""
    v = spec.eigenfunctions[:, 0]
    h = spec.grid.h
    return BoundarySlopes(boundary_slope(v, h, "left"), boundary_slope(v, h, "right"))


def endpoint_comparison(w: Weight1D, a: float, b: float, n: int) -> str:
    """Compare |u_1(a)| against |u_1(b)| for the first nontrivial Neumann
    eigenfunction of an even weight on an interval with a + b > 0.

    Returns "left_ge_right", "right_ge_left" or "equal" (1e-6 band).
    """
    if not w.even:
        raise ValueError("endpoint comparison expects an even weight")
    if not a + b > 0.0:
        raise ValueError("expects a + b > 0")
    spec = solve_neumann(w, a, b, 1, n)
    u1 = spec.eigenfunctions[:, 1]
    left = abs(float(u1[0]))
    right = abs(float(u1[-1]))
    if abs(left - right) <= 1e-6 * max(left, right):
        return "equal"
    return "left_ge_right" if left > right else "right_ge_left"


def write_spectrum_csv(spec: Spectrum, out: TextIO) -> None:
    """CSV dump: index, coordinate, weight, one column per eigenfunction."""
    count = spec.eigenfunctions.shape[1]
    first = 0 if spec.bc == NEUMANN else 1
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["index", spec.coord, "weight"] + [f"u{first + j}" for j in range(count)]
    )
    nodes = spec.nodes
    for i in range(nodes.shape[0]):
        row = [str(i), format(nodes[i], ".17g"), format(spec.weight_values[i], ".17g")]
        row += [format(spec.eigenfunctions[i, j], ".17g") for j in range(count)]
        writer.writerow(row)
