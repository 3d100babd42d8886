"""Acceptance criteria, one test each.

Every criterion records its sub-checks through the ``acceptance`` fixture so
the end-of-run summary prints a PASS/FAIL line per criterion.
"""
import math
import random
import time

import numpy as np
import pytest

from smx import specfun as sf
from smx import oracle, spectrum
from smx.scattering import ModelParams, irregular_wronskian, redundant_pole, s_matrix


def test_01_heisenberg_ratio(acceptance):
    log = acceptance(1, "Heisenberg ratio |R_H - 1| < 1e-9 for alpha in {3, 5, 8, 12}")
    t0 = time.perf_counter()
    worst = 0.0
    for alpha in (3.0, 5.0, 8.0, 12.0):
        rep = spectrum.heisenberg_report(ModelParams(1.0, alpha), spectrum.Method.analytic_residue)
        assert rep.bound_states
        dev = max(abs(r - 1.0) for r in rep.ratios)
        worst = max(worst, dev)
        log.check(f"alpha={alpha:g}: {len(rep.ratios)} states", dev < 1e-9, f"max |R_H-1| = {dev:.2e}")
    elapsed = time.perf_counter() - t0
    log.check("runtime < 10 s", elapsed < 10.0, f"{elapsed:.2f} s")
    assert log.passed, worst


def test_02_reduced_identity(acceptance):
    log = acceptance(2, "Reduced identity: zero at bound states, > 1e-3 at midpoints")
    for alpha in (3.0, 5.0, 8.0):
        p = ModelParams(1.0, alpha)
        kappas = spectrum.bound_state_kappas(p)
        worst = 0.0
        for kappa in kappas:
            rhs = -2.0 * math.sin(math.pi * 2.0 * kappa) / (math.pi * alpha)
            worst = max(worst, abs(spectrum.reduced_identity_check(p, kappa)) / max(1.0, abs(rhs)))
        log.check(f"alpha={alpha:g} at {len(kappas)} bound states", worst < 1e-10, f"{worst:.1e}")
        for k_hi, k_lo in zip(kappas, kappas[1:]):
            mid = 0.5 * (k_hi + k_lo)
            res = abs(spectrum.reduced_identity_check(p, mid))
            log.check(f"alpha={alpha:g} midpoint kappa={mid:.4f}", res > 1e-3, f"{res:.3e}")
    assert log.passed


def test_03_redundant_residues(acceptance):
    log = acceptance(3, "Redundant residues: contour vs closed form; alpha=2, n=1 equals pi")
    p = ModelParams(1.0, 1.0)
    for n in range(1, 6):
        spec = oracle.default_contour(p, redundant_pole(p, n))
        contour = oracle.contour_residue(p, spec)
        analytic = spectrum.redundant_residue_analytic(p, n)
        rel = abs(contour - analytic) / abs(analytic)
        log.check(f"n={n}, alpha=1", rel < 1e-8, f"rel diff {rel:.1e}")
    val = spectrum.redundant_residue_analytic(ModelParams(1.0, 2.0), 1)
    # The signed residue is -pi; the criterion asks for +pi.  Left as stated.
    log.check("alpha=2, n=1 analytic value == pi (1e-14)", abs(val - math.pi) < 1e-14,
              f"value {val!r}")
    assert log.passed


def test_04_redundant_sum(acceptance):
    log = acceptance(4, "Redundant sum: 50-term partial sum vs (pi/a) q I1(2q) within 1e-12")
    p = ModelParams(1.0, 4.0)
    for q in (0.1, 0.5, 1.0):
        r_sum = 4.0 * p.a * math.log(0.5 * p.alpha / q)
        partial, closed = spectrum.redundant_pole_sum(p, r_sum, 50)
        rel = abs(partial / closed - 1.0)
        log.check(f"q={q}", rel < 1e-12, f"rel diff {rel:.1e}")
    verdict = spectrum.resolve_i1_argument(0.5)
    log.check("verdict: I1 argument is 2q", verdict.scale == 2.0,
              f"q: {verdict.err_q:.2e}, 2q: {verdict.err_2q:.1e}")
    assert log.passed


def test_05_unitarity_and_symmetry(acceptance):
    log = acceptance(5, "Unitarity on 1000 real k; S*(k*) S(k) = 1 on 100 complex k")
    ks = np.linspace(0.01, 20.0, 1000)
    for alpha in (1.0, 3.0, 5.0, 8.0):
        p = ModelParams(1.0, alpha)
        dev = max(abs(abs(s_matrix(p, k)) - 1.0) for k in ks)
        log.check(f"unitarity alpha={alpha:g}", dev < 1e-12, f"{dev:.1e}")
    rng = random.Random(20240611)
    p = ModelParams(1.0, 3.0)
    worst, count = 0.0, 0
    while count < 100:
        k = complex(rng.uniform(-3.0, 3.0), rng.uniform(-2.0, 2.0))
        w = 2j * p.a * k
        if abs(w - round(w.real)) <= 0.1:
            continue
        dev = abs(s_matrix(p, k.conjugate()).conjugate() * s_matrix(p, k) - 1.0)
        worst = max(worst, dev)
        count += 1
    log.check("symmetry, 100 random k (alpha=3)", worst < 1e-10, f"{worst:.1e}")
    assert log.passed


def test_06_oracle_equivalence(acceptance):
    from smx.scattering import regular_solution

    log = acceptance(6, "Numerov vs regular solution; shooting vs find_bound_states")
    p = ModelParams(1.0, 3.0)
    rng = np.random.default_rng(11)
    worst_norm = worst_point = 0.0
    for k in rng.uniform(0.1, 3.0, 10):
        r, u = oracle.numerov_integrate(p, k * k)
        idx = np.nonzero((r >= 0.5 - 1e-12) & (r <= 10.0 + 1e-12))[0][::10]
        phi = np.array([regular_solution(p, k, r[i]).real for i in idx])
        err = np.abs(u[idx] - phi)
        worst_norm = max(worst_norm, err.max() / np.abs(phi).max())
        worst_point = max(worst_point, (err / np.abs(phi)).max())
    log.check("Numerov, 10 random k in [0.1, 3], r in [0.5, 10]", worst_norm < 1e-6,
              f"max|u-phi|/max|phi| = {worst_norm:.1e}; pointwise {worst_point:.1e}")
    for alpha in (3.0, 5.0, 8.0):
        q = ModelParams(1.0, alpha)
        shoot = oracle.shooting_eigenvalues(q)
        exact = spectrum.bound_state_kappas(q)
        same = len(shoot) == len(exact)
        dev = max((abs(a - b) for a, b in zip(shoot, exact)), default=0.0)
        log.check(f"shooting alpha={alpha:g} ({len(exact)} states)", same and dev < 1e-6,
                  f"max diff {dev:.1e}")
    assert log.passed


def test_07_wronskian(acceptance):
    log = acceptance(7, "W{f+, f-} = -2ik at generic k and as i rho -> n")
    p = ModelParams(1.0, 3.0)
    worst = 0.0
    for k in (0.3 + 0.2j, 1.1, 2.5 - 0.4j, -0.7 + 0.05j, 0.05 + 1.3j):
        for r in (0.0, 1.3, 6.0):
            worst = max(worst, abs(irregular_wronskian(p, k, r) + 2j * k))
    log.check("generic k", worst < 1e-8, f"{worst:.1e}")
    for n in (1, 2, 3):
        worst = 0.0
        for j in range(3, 7):
            w = n - 10.0 ** (-j)
            k = w / (2j * p.a)
            worst = max(worst, abs(irregular_wronskian(p, k, 2.0) + 2j * k))
        log.check(f"i rho = {n} - 10^-j, j=3..6", worst < 1e-8, f"{worst:.1e}")
    assert log.passed


def test_08_bound_state_count(acceptance):
    log = acceptance(8, "Bound-state count <= floor(alpha^2/4); none for alpha < 2")
    alphas = np.linspace(0.5, 15.0, 291)
    over, below2 = [], []
    for alpha in alphas:
        n = len(spectrum.bound_state_kappas(ModelParams(1.0, float(alpha))))
        if n > math.floor(alpha * alpha / 4.0):
            over.append(float(alpha))
        if alpha < 2.0 and n:
            below2.append(float(alpha))
    log.check("count bound on 291-point sweep", not over, f"violations: {over[:5]}")
    log.check("no states for alpha < 2", not below2, f"{below2[:5]}")
    assert log.passed


def test_09_large_order_limit(acceptance):
    log = acceptance(9, "S(i(n+1/2)/2a)/asymptote - 1 decreasing, < 0.02 at n = 80")
    p = ModelParams(1.0, 3.0)
    devs = []
    for n in (10, 20, 40, 80):
        s, asym = spectrum.large_n_limit_check(p, n)
        devs.append(abs(s / asym - 1.0))
    detail = ", ".join(f"{d:.4f}" for d in devs)
    log.check("monotone decrease over n = 10, 20, 40, 80", all(b < a for a, b in zip(devs, devs[1:])),
              detail)
    log.check("deviation < 0.02 at n = 80 (alpha = 3)", devs[-1] < 0.02, f"{devs[-1]:.4f}")
    assert log.passed


def test_10_specfun_invariants(acceptance):
    log = acceptance(10, "specfun reflection, Wronskian and integer-identity suites")
    rng = random.Random(5)
    worst, count = 0.0, 0
    while count < 100:
        w = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
        if abs(w) >= 5 or abs(w) < 1e-3:
            continue
        n = round(w.real)
        if n != 0 and abs(w - n) <= 0.1:
            continue
        val = sf.gamma_cx(1 + w) * sf.gamma_cx(1 - w) * sf.sinpi_cx(w) / (math.pi * w)
        worst = max(worst, abs(val - 1.0))
        count += 1
    log.check("reflection, 100 random w", worst < 1e-12, f"{worst:.1e}")

    worst = 0.0
    orders = [0.3j, 0.7, 2 + 0.5j, 1.0, 3.0, 1 + 1e-5, 2 - 3e-6, 1e-6, 4 + 1e-7j, -2.5]
    for nu in orders:
        for x in (0.5, 2.0, 5.0, 9.0):
            j = sf.bessel_j_cx_order(nu, x)
            y = sf.bessel_y_cx_order(nu, x)
            jp = sf.bessel_jp_cx_order(nu, x)
            yp = sf.bessel_yp_cx_order(nu, x)
            ref = 2.0 / (math.pi * x)
            worst = max(worst, abs((j * yp - jp * y) / ref - 1.0))
    log.check("Wronskian J Y' - J' Y = 2/(pi x), incl. near-integer orders", worst < 1e-9,
              f"{worst:.1e}")

    worst = 0.0
    for n in range(1, 9):
        for x in (0.5, 1.0, 3.0, 7.0):
            diff = sf.bessel_j_cx_order(-n, x) - (-1) ** n * sf.bessel_j_cx_order(n, x)
            worst = max(worst, abs(diff))
    log.check("J_{-n} = (-1)^n J_n, n = 1..8", worst < 1e-12, f"{worst:.1e}")
    assert log.passed
