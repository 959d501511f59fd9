"""Acceptance suite: every criterion at its stated tolerance.

Each test prints one `[criterion N] PASS/FAIL` line (run pytest with -s
to see them).  Resolutions are pinned; everything completes at desk
scale on the compiled kernel backend.
"""

import math

import numpy as np
import pytest

from conftest import bessel_j1_prime, bessel_j_series, first_zero, random_annular_union, random_cell_function
from szegolab import radialnd, rearrange as ra, scenarios, sl1d, sweep
from szegolab.numcore import find_root
from szegolab.weights import (
    anti_gaussian_weight,
    constant_weight,
    cumulative,
    gaussian_weight,
    radial_square_weight,
    radial_zero_weight,
)


def report(number, ok, detail):
    print(f"[criterion {number}] {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_criterion_1_classical_oracle():
    """q = 1 on (0,1): mu1 vs pi^2 at n=2000; Richardson gains >= 4x."""
    w = constant_weight(1.0)
    mu_n = sl1d.solve_neumann(w, 0.0, 1.0, 1, 2000).eigenvalues[1]
    mu_2n = sl1d.solve_neumann(w, 0.0, 1.0, 1, 4000).eigenvalues[1]
    exact = math.pi**2
    rel = abs(mu_n - exact) / exact
    rich = (4.0 * mu_2n - mu_n) / 3.0
    gain = abs(mu_n - exact) / abs(rich - exact)
    ok = rel <= 1e-4 and gain >= 4.0
    report(1, ok, f"rel err {rel:.2e} (<= 1e-4), Richardson gain {gain:.1f}x (>= 4x)")


def test_criterion_2_isospectrality():
    """mu_n = lambda_n = k_n for n = 1..3 at resolution 4000."""
    intervals = [(-1.0, 1.0), (-0.5, 1.2), (0.2, 1.5)]
    worst = 0.0
    for w in (gaussian_weight(), anti_gaussian_weight()):
        for a, b in intervals:
            mu = sl1d.solve_neumann(w, a, b, 3, 4000).eigenvalues[1:4]
            lam = sl1d.solve_dirichlet_inverse_weight(w, a, b, 3, 4000).eigenvalues
            ks = sl1d.solve_flat_dirichlet(w, cumulative(w, a), cumulative(w, b), 3, 4000).eigenvalues
            worst = max(worst, float(np.max(np.abs(mu - lam) / mu)))
            worst = max(worst, float(np.max(np.abs(lam - ks) / mu)))
    report(2, worst <= 1e-5, f"worst |mu-lambda|,|lambda-k| = {worst:.2e} of mu (<= 1e-5)")


def _sweep_checks(w, a_min, a_max, expect_sign):
    cfg = sweep.SweepConfig(w, 1.5, a_min, a_max, 21, 4000)
    res = sweep.sweep_mu1(cfg)
    abar = res.symmetric_halfwidth

    sym_defect = max(
        abs(p.mu1 - sl1d.solve_neumann(w, -p.b, -p.a, 1, 4000).eigenvalues[1]) / p.mu1
        for p in res.points
    )
    right = [p for p in res.points if p.a > -abar]
    derivs = np.array([p.dmu1_analytic for p in right])
    if expect_sign > 0:
        sign_ok = bool(np.all(derivs >= -1e-8))
    else:
        sign_ok = bool(np.all(derivs <= 1e-8))
    strict_ok = float(np.min(np.abs(derivs))) > 10.0 * sweep.SOLVER_TOL
    fd_rel = max(
        (abs(p.dmu1_analytic - p.dmu1_fd) / abs(p.dmu1_analytic)
         for p in res.points if abs(p.dmu1_analytic) > 1e-6 * p.mu1),
        default=0.0,
    )
    return sym_defect, sign_ok, strict_ok, fd_rel


def test_criterion_3_sliding_interval_laws():
    """Gaussian sweep d=1.5, 21 points, n=4000; anti-Gaussian reversed."""
    g_sym, g_sign, g_strict, g_fd = _sweep_checks(gaussian_weight(), -0.78, -0.35, -1)
    a_sym, a_sign, a_strict, a_fd = _sweep_checks(anti_gaussian_weight(), -0.70, 0.40, +1)
    ok = (
        g_sym <= 1e-5 and g_sign and g_strict and g_fd <= 1e-3
        and a_sym <= 1e-5 and a_sign and a_strict and a_fd <= 1e-3
    )
    report(
        3, ok,
        f"gaussian: sym {g_sym:.1e}, sign {g_sign}, strict {g_strict}, fd rel {g_fd:.1e}; "
        f"anti: sym {a_sym:.1e}, sign {a_sign}, strict {a_strict}, fd rel {a_fd:.1e}",
    )


def test_criterion_4_boundary_slope_law():
    """Slope ordering at the two ends of the flat problem, alpha+beta > 0."""
    a, b, n = -0.3, 1.1, 4000
    g = gaussian_weight()
    ag = anti_gaussian_weight()
    s_g = sl1d.boundary_slopes(
        sl1d.solve_flat_dirichlet(g, cumulative(g, a), cumulative(g, b), 1, n)
    )
    s_a = sl1d.boundary_slopes(
        sl1d.solve_flat_dirichlet(ag, cumulative(ag, a), cumulative(ag, b), 1, n)
    )
    s_c = sl1d.boundary_slopes(sl1d.solve_flat_dirichlet(constant_weight(1.0), 0.2, 1.4, 1, n))
    anti_ok = -s_a.right <= s_a.left
    gauss_ok = -s_g.right >= s_g.left
    const_gap = abs(-s_c.right - s_c.left)
    ok = anti_ok and gauss_ok and const_gap <= 1e-9
    report(
        4, ok,
        f"anti -w'(b) <= w'(a): {anti_ok}; gaussian reversed: {gauss_ok}; "
        f"constant equality gap {const_gap:.1e} (<= 1e-9)",
    )


def test_criterion_5_spectral_gap():
    """Bessel anchors on the disk; nu1 < tau1 across profiles and radii."""
    jp = first_zero(bessel_j1_prime, 1.5, 2.5)
    jz = first_zero(lambda x: bessel_j_series(1, x), 3.0, 4.5)
    assert jp == pytest.approx(1.841184, abs=2e-6)
    assert jz == pytest.approx(3.831706, abs=2e-6)
    disk = radialnd.spectral_gap(radial_zero_weight(2), 1.0, 2000)
    nu_ok = abs(disk.nu1 - 3.3900) <= 0.004
    tau_ok = abs(disk.tau1 - 14.682) <= 0.015
    oracle_ok = abs(disk.nu1 - jp**2) <= 1e-3 and abs(disk.tau1 - jz**2) <= 1e-2

    gaps_ok = True
    margins = []
    for dim in (2, 3):
        for radius in (0.5, 1.0, 2.0):
            g = radialnd.spectral_gap(radial_square_weight(dim), radius, 2000)
            tol = radialnd.GAP_TOL * max(1.0, abs(g.tau1))
            margins.append((g.tau1 - g.nu1) / tol)
            gaps_ok = gaps_ok and g.gap_ok and (g.tau1 - g.nu1) > 10.0 * tol
    ok = nu_ok and tau_ok and oracle_ok and gaps_ok
    report(
        5, ok,
        f"nu1 {disk.nu1:.4f} (3.3900 +/- 0.004), tau1 {disk.tau1:.3f} (14.682 +/- 0.015), "
        f"gap margins >= {min(margins):.1e}x tol across h=r^2, N in {{2,3}}, R in {{0.5,1,2}}",
    )


def test_criterion_6_counterexample():
    """The asymmetric rectangle loses to the equal-mass disk."""
    rep = scenarios.run_counterexample(4096)
    checks = {
        "c bracket": 0.43 < rep.c < 0.44,
        "d bracket": 1.33 < rep.d < 1.34,
        "mu1(c,d)=12": abs(rep.mu1_cd - 12.0) <= 1e-3 * 12.0,
        "mu1(-c,c)=12": abs(rep.mu1_cc - 12.0) <= 1e-3 * 12.0,
        "mass>2 (quadrature)": rep.gamma2_T > 2.0,
        "mass>2 (Taylor bound)": rep.taylor_lower_bound > 2.0,
        "closed form": abs(rep.k_at_chi_inv_2 - 7.505842137422018) <= 1e-10,
        "closed form < 12": rep.k_at_chi_inv_2 < 12.0,
        "chain": rep.mu1_ball < rep.k_rT < 12.0,
        "verdict": rep.verdict,
    }
    failed = [k for k, v in checks.items() if not v]
    report(6, not failed, f"failed: {failed}" if failed else
           f"mu1(ball) {rep.mu1_ball:.4f} < k(r_T) {rep.k_rT:.4f} < "
           f"k(chi^-1(2)) {rep.k_at_chi_inv_2:.4f} < 12 = mu1(T)")


def test_criterion_7_rearrangement_campaigns():
    """200 Hardy-Littlewood pairs; Cavalieri and equimeasurability at 1e-12;
    50 fixed-mass annular unions with equality only at the ball."""
    rw = radial_square_weight(2)
    rng = np.random.default_rng(20240917)

    hl_ok = True
    exact_ok = True
    for _ in range(200):
        u = random_cell_function(rng, rw, n_cells=int(rng.integers(2, 8)))
        v = ra.cell_function(u.support, rng.uniform(0.0, 3.0, len(u.values)))
        hl_ok = hl_ok and ra.hardy_littlewood_check(u, v, rw).ok

        masses = ra.cell_masses(u, rw)
        star = ra.decreasing_rearrangement(u, rw)
        for p in (1, 2):
            direct = float(np.sum(np.abs(np.asarray(u.values)) ** p * masses))
            exact_ok = exact_ok and abs(star.integral(p) - direct) <= 1e-12 * max(1.0, direct)
        d_u = ra.distribution(u, rw)
        d_s = ra.distribution(ra.star_rearrangement(u, rw), rw)
        exact_ok = exact_ok and d_u.edges == d_s.edges
        exact_ok = exact_ok and all(
            abs(x - y) <= 1e-12 * max(1.0, abs(x)) for x, y in zip(d_u.levels, d_s.levels)
        )

    mass = ra.ball_measure(rw, 1.0)
    ball = ra.annular_set(2, [(0.0, 1.0)])
    ball_rep = ra.rayleigh_bound(ball, rw, n=1500)
    ball_gap_n = abs(ball_rep.num_star - ball_rep.num_omega)
    ball_gap_d = abs(ball_rep.den_omega - ball_rep.den_star)
    unions_ok = True
    min_gap = math.inf
    for _ in range(50):
        omega = random_annular_union(rng, rw, mass)
        rep = ra.rayleigh_bound(omega, rw, n=1500)
        unions_ok = unions_ok and rep.numerator_cmp and rep.denominator_cmp
        gap_n = rep.num_star - rep.num_omega
        gap_d = rep.den_omega - rep.den_star
        min_gap = min(min_gap, gap_n, gap_d)
    unions_ok = unions_ok and min_gap > 1e-9 and ball_gap_n <= 1e-9 and ball_gap_d <= 1e-9

    ok = hl_ok and exact_ok and unions_ok
    report(
        7, ok,
        f"HL 200/200: {hl_ok}; exact identities: {exact_ok}; 50 unions hold with "
        f"min strict gap {min_gap:.2e}, ball gaps ({ball_gap_n:.1e}, {ball_gap_d:.1e}) <= 1e-9",
    )


def test_criterion_8_trial_profile():
    """Monotone N, D for h in {0, r^2}, N in {2, 3}; ball equality at 1e-6."""
    monotone_ok = True
    eq_worst = 0.0
    for maker in (radial_zero_weight, radial_square_weight):
        for dim in (2, 3):
            rw = maker(dim)
            prof = ra.trial_profile(rw, 1.0, n=4000)  # raises if not monotone
            rs = np.linspace(1e-3, 2.0, 500)
            monotone_ok = monotone_ok and bool(np.all(np.diff(prof.Nfun(rs)) < 0.0))
            monotone_ok = monotone_ok and bool(
                np.all(np.diff(prof.Dfun(rs)) >= -1e-12 * np.max(prof.Dfun(rs)))
            )
            rep = ra.rayleigh_bound(ra.annular_set(dim, [(0.0, 1.0)]), rw, n=4000)
            eq_worst = max(eq_worst, abs(rep.bound - rep.mu1_star) / rep.mu1_star)
    ok = monotone_ok and eq_worst <= 1e-6
    report(8, ok, f"monotone: {monotone_ok}; ball equality worst rel {eq_worst:.2e} (<= 1e-6)")
