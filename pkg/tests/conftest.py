"""Shared fixtures and independent oracles for the test suite."""

import math

import numpy as np
import pytest

from szegolab import rearrange
from szegolab.numcore import find_root
from szegolab.weights import (
    anti_gaussian_weight,
    constant_weight,
    gaussian_weight,
    radial_square_weight,
    radial_zero_weight,
)


@pytest.fixture(scope="session")
def gauss():
    return gaussian_weight()


@pytest.fixture(scope="session")
def anti():
    return anti_gaussian_weight()


@pytest.fixture(scope="session")
def unit():
    return constant_weight(1.0)


@pytest.fixture(scope="session")
def plane_square():
    return radial_square_weight(2)


@pytest.fixture(scope="session")
def plane_flat():
    return radial_zero_weight(2)


# ---------------------------------------------------------------------------
# independent Bessel oracle: power series plus bisection

def bessel_j_series(nu: int, x: float, terms: int = 60) -> float:
    total = 0.0
    term = (0.5 * x) ** nu / math.factorial(nu)
    m = 0
    while m < terms:
        total += term
        term *= -(0.25 * x * x) / ((m + 1) * (m + 1 + nu))
        m += 1
    return total


def bessel_j1_prime(x: float) -> float:
    # J1' = (J0 - J2)/2
    return 0.5 * (bessel_j_series(0, x) - bessel_j_series(2, x))


def spherical_j1_prime(x: float) -> float:
    # d/dx of sin(x)/x^2 - cos(x)/x
    return 2.0 * math.cos(x) / x**2 - 2.0 * math.sin(x) / x**3 + math.sin(x) / x


def first_zero(fn, lo: float, hi: float) -> float:
    return find_root(fn, lo, hi, 1e-13)


# ---------------------------------------------------------------------------
# random radially symmetric sets of prescribed mass

def random_cell_function(rng, rw, n_cells=6, r_lo=0.05, r_hi=2.0, v_hi=3.0):
    cuts = np.sort(rng.uniform(r_lo, r_hi, 2 * n_cells))
    annuli = [(cuts[2 * i], cuts[2 * i + 1]) for i in range(n_cells)]
    values = rng.uniform(0.0, v_hi, n_cells)
    return rearrange.cell_function(rearrange.annular_set(rw.dim, annuli), values)


def random_annular_union(rng, rw, mass, max_annuli=3, r_hi=1.6):
    """Random disjoint annuli whose total weighted measure equals `mass`
    (the outermost radius is solved for); never equal to the ball."""
    for _ in range(200):
        k = int(rng.integers(1, max_annuli + 1))
        pieces = np.sort(rng.uniform(0.05, r_hi, 2 * k))
        if np.min(np.diff(pieces)) < 0.03:
            continue
        annuli = [(pieces[2 * i], pieces[2 * i + 1]) for i in range(k)]
        partial = sum(
            rearrange.ball_measure(rw, b) - rearrange.ball_measure(rw, a) for a, b in annuli
        )
        need = mass - partial
        if need <= rearrange.ball_measure(rw, 0.05):
            continue
        a_last = pieces[-1] + 0.05
        f = lambda r: rearrange.ball_measure(rw, r) - rearrange.ball_measure(rw, a_last) - need
        hi = a_last + 0.1
        while f(hi) < 0.0:
            hi *= 1.5
        r_out = find_root(f, a_last, hi, 1e-13)
        return rearrange.annular_set(rw.dim, annuli + [(a_last, r_out)])
    raise RuntimeError("failed to draw an annular union")
