import cmath
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smx import specfun as sf
from smx.errors import (
    CrossCheckFailed,
    DomainTooSmall,
    PoleAtNonPositiveInteger,
    SeriesNotConverged,
)

mpmath.mp.dps = 30
EULER = 0.57721566490153286


def rel(a, b):
    return abs(complex(a) - complex(b)) / abs(complex(b))


# --- policy -------------------------------------------------------------------

def test_policy_validation():
    with pytest.raises(ValueError):
        sf.SeriesPolicy(rel_tol=0.0)
    with pytest.raises(ValueError):
        sf.SeriesPolicy(rel_tol=1.5)
    with pytest.raises(ValueError):
        sf.SeriesPolicy(max_terms=10)
    assert sf.DEFAULT_POLICY.rel_tol == 1e-15


def test_short_policy_reports_non_convergence():
    tight = sf.SeriesPolicy(rel_tol=1e-15, max_terms=50)
    with pytest.raises(SeriesNotConverged):
        sf.bessel_j_cx_order(0.5, 80.0, tight)


# --- Gamma --------------------------------------------------------------------

def test_gamma_examples():
    assert sf.gamma_cx(1) == pytest.approx(1.0, rel=1e-15)
    assert sf.gamma_cx(0.5).real == pytest.approx(1.7724538509055160, rel=1e-15)


@pytest.mark.parametrize("z", [1 + 2j, 0.3 - 4j, -2.5 + 0.1j, 12.5 + 30j, 0.01j, -7.3, 45.0])
def test_gamma_against_mpmath(z):
    assert rel(sf.gamma_cx(z), mpmath.gamma(z)) < 1e-12


def test_gamma_poles():
    for z in (0, -1, -5, -3 + 1e-14):
        with pytest.raises(PoleAtNonPositiveInteger):
            sf.gamma_cx(z)
    assert sf.rgamma_cx(-3) == 0
    assert abs(sf.gamma_cx(-3 + 1e-10)) > 1e8


def test_gamma_by_quadrature():
    # integral of t^(z-1) e^(-t) on [0, 50], in the variable s = log t
    from smx.oracle import adaptive_quadrature

    z = 1 + 2j
    re = adaptive_quadrature(lambda s: (cmath.exp(z * s - math.exp(s))).real, -40.0, math.log(50.0), 1e-12)
    im = adaptive_quadrature(lambda s: (cmath.exp(z * s - math.exp(s))).imag, -40.0, math.log(50.0), 1e-12)
    assert abs(complex(re, im) - sf.gamma_cx(z)) < 1e-9


def test_loggamma_large_imaginary_part():
    z = 0.5 + 200j
    assert abs(sf.loggamma_cx(z) - complex(mpmath.loggamma(z))) < 1e-10


@settings(max_examples=60, deadline=None)
@given(st.complex_numbers(max_magnitude=5.0, allow_nan=False, allow_infinity=False))
def test_reflection(w):
    n = round(w.real)
    if (n != 0 and abs(w - n) < 0.1) or abs(w) < 1e-6:
        return
    val = sf.gamma_cx(1 + w) * sf.gamma_cx(1 - w) * sf.sinpi_cx(w) / (math.pi * w)
    assert abs(val - 1) < 1e-12


def test_gamma_residue_values():
    assert sf.gamma_residue_at(1) == -1.0
    assert sf.gamma_residue_at(2) == 1.0
    assert sf.gamma_residue_at(4) == pytest.approx(1.0 / 6.0)
    with pytest.raises(ValueError):
        sf.gamma_residue_at(0)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_gamma_residue_by_limit(n):
    # (w - n) Gamma(1 - w) as w -> n, read off numerically
    approx = []
    for d in (1e-7, -1e-7):
        w = n + d
        approx.append((w - n) * sf.gamma_cx(1 - w))
    limit = 0.5 * (approx[0] + approx[1])
    assert limit.real == pytest.approx(sf.gamma_residue_at(n), rel=1e-9)


def test_digamma():
    assert sf.digamma_cx(1).real == pytest.approx(-EULER, rel=1e-14)
    assert sf.digamma_cx(2).real == pytest.approx(1 - EULER, rel=1e-14)
    z = 0.5 + 1j
    h = 1e-6
    fd = (sf.loggamma_cx(z + h) - sf.loggamma_cx(z - h)) / (2 * h)
    assert abs(sf.digamma_cx(z) - fd) < 1e-8
    for z in (-3.7 + 0.2j, 20 - 40j, 0.01):
        assert rel(sf.digamma_cx(z), mpmath.digamma(z)) < 1e-10
    with pytest.raises(PoleAtNonPositiveInteger):
        sf.digamma_cx(-2)


# --- 0F1 ----------------------------------------------------------------------

def test_hyp0f1_basic():
    assert sf.hyp0f1(3.3 - 1j, 0) == 1
    partial = math.fsum((-1.0) ** m / (math.factorial(m + 1) * math.factorial(m)) for m in range(40))
    assert sf.hyp0f1(2, -1).real == pytest.approx(partial, rel=1e-14)
    with pytest.raises(PoleAtNonPositiveInteger):
        sf.hyp0f1(-2, 1.0)


def test_hyp0f1_matches_bessel_form():
    w, alpha = 0.7j, 3.0
    lhs = sf.hyp0f1(1 - w, -alpha ** 2 / 4)
    rhs = sf.gamma_cx(1 - w) * cmath.exp(w * math.log(alpha / 2)) * sf.bessel_j_cx_order(-w, alpha)
    assert rel(lhs, rhs) < 1e-14


@pytest.mark.parametrize("b,z", [(1.5 + 2j, -4.0), (0.2, 10.0), (-3.5 + 0.1j, -20.0), (7j, 3 - 2j)])
def test_hyp0f1_mpmath(b, z):
    assert rel(sf.hyp0f1(b, z), mpmath.hyp0f1(b, z)) < 1e-13


# --- Bessel J -----------------------------------------------------------------

@pytest.mark.parametrize("nu", [0, 1.5, -0.3, 2 + 0.5j, 1j, -3.2j, 6.5 - 2j, -2.0027959990841193])
@pytest.mark.parametrize("x", [0.1, 1.0, 4.0, 9.0])
def test_bessel_j_mpmath(nu, x):
    ref = mpmath.besselj(nu, x)
    assert abs(sf.bessel_j_cx_order(nu, x) - complex(ref)) <= 1e-13 * max(abs(ref), 1e-3)


@pytest.mark.parametrize("nu", [0.3, 1.8933643874275, -2.0027959990841193, 7.5])
@pytest.mark.parametrize("x", [14.8, 20.0])
def test_real_order_large_argument(nu, x):
    # real orders are summed in double-double, so cancellation does not hurt
    ref = mpmath.besselj(nu, x)
    assert abs(sf.bessel_j_cx_order(nu, x).real - float(ref)) <= 1e-14 * abs(ref)


def test_j0_first_zero():
    assert abs(sf.bessel_j_cx_order(0, 2.404825557695773)) < 1e-12


def test_integer_identity():
    for n in range(1, 9):
        for x in (0.5, 1, 3, 7):
            diff = sf.bessel_j_cx_order(-n, x) - (-1) ** n * sf.bessel_j_cx_order(n, x)
            assert abs(diff) < 1e-12


def _ode_residual(f, nu, x, h=1e-4):
    d1 = (f(nu, x + h) - f(nu, x - h)) / (2 * h)
    d2 = (f(nu, x + h) - 2 * f(nu, x) + f(nu, x - h)) / (h * h)
    return x * x * d2 + x * d1 + (x * x - nu * nu) * f(nu, x)


def test_j_ode_residual_order_i():
    assert abs(_ode_residual(sf.bessel_j_cx_order, 1j, 1.0)) < 1e-6


@settings(max_examples=30, deadline=None)
@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(0.5, 10))
def test_j_ode_residual_random(nr, ni, x):
    nu = complex(nr, ni)
    if abs(nu) > 5:
        return
    scale = max(1.0, abs(sf.bessel_j_cx_order(nu, x)) * (x * x + abs(nu) ** 2))
    assert abs(_ode_residual(sf.bessel_j_cx_order, nu, x)) < 1e-6 * scale


@settings(max_examples=30, deadline=None)
@given(st.floats(-4, 4), st.floats(-4, 4), st.floats(0.1, 12))
def test_schwarz_reflection(nr, ni, x):
    nu = complex(nr, ni)
    a = sf.bessel_j_cx_order(nu.conjugate(), x)
    b = sf.bessel_j_cx_order(nu, x).conjugate()
    assert abs(a - b) <= 1e-14 * max(1.0, abs(b))


def test_bessel_rejects_nonpositive_argument():
    for x in (0.0, -1.0):
        with pytest.raises(ValueError):
            sf.bessel_j_cx_order(0.5, x)


# --- Bessel Y -----------------------------------------------------------------

def test_y_wronskian_imaginary_order():
    nu, x = 0.3j, 2.0
    w = (sf.bessel_j_cx_order(nu, x) * sf.bessel_yp_cx_order(nu, x)
         - sf.bessel_jp_cx_order(nu, x) * sf.bessel_y_cx_order(nu, x))
    assert abs(w - 2 / (math.pi * x)) < 1e-13


@pytest.mark.parametrize("nu", [0, 1, 2, 1 + 1e-7, 3 - 4e-6, 5e-6, -1 + 2e-6j])
def test_y_wronskian_near_integers(nu):
    for x in (0.7, 3.0, 8.0):
        w = (sf.bessel_j_cx_order(nu, x) * sf.bessel_yp_cx_order(nu, x)
             - sf.bessel_jp_cx_order(nu, x) * sf.bessel_y_cx_order(nu, x))
        assert abs(w * math.pi * x / 2 - 1) < 1e-9


def test_y_integer_order_finite():
    y = sf.bessel_y_cx_order(0, 1.0)
    assert cmath.isfinite(y)
    assert y.real == pytest.approx(float(mpmath.bessely(0, 1)), rel=1e-9)


@pytest.mark.parametrize("nu,x", [(0.5, 2.0), (2 + 0.5j, 3.0), (1.3j, 0.4), (4.0, 6.0)])
def test_y_mpmath(nu, x):
    assert rel(sf.bessel_y_cx_order(nu, x), mpmath.bessely(nu, x)) < 1e-9


def _ode_residual_5pt(f, nu, x, h=1e-2):
    fm2, fm1, f0, fp1, fp2 = (f(nu, x + j * h) for j in (-2, -1, 0, 1, 2))
    d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h)
    d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h)
    return x * x * d2 + x * d1 + (x * x - nu * nu) * f0


def test_y_ode_residual():
    # a three-point stencil at h = 1e-4 has a roundoff floor near 1e-6 here
    assert abs(_ode_residual_5pt(sf.bessel_y_cx_order, 2 + 0.5j, 3.0)) < 1e-8


# --- order derivative ---------------------------------------------------------

@pytest.mark.parametrize("nu,x", [(1.0, 1.0), (0.0, 3.0), (-1.0, 3.8317), (2.7, 9.0), (-2.5, 0.3)])
def test_order_derivative_mpmath(nu, x):
    ref = mpmath.diff(lambda v: mpmath.besselj(v, x), nu)
    assert abs(sf.bessel_j_order_derivative(nu, x) - float(ref)) < 1e-12 * max(1.0, abs(ref))


def test_order_derivative_small_x():
    with pytest.raises(DomainTooSmall):
        sf.bessel_j_order_derivative(0.0, 1e-9)
    # logarithmic growth as x shrinks
    assert sf.bessel_j_order_derivative(0.0, 1e-6) < sf.bessel_j_order_derivative(0.0, 1e-3) < 0


def test_order_derivative_crosscheck_trips(monkeypatch):
    # a coarse difference step makes the two paths disagree beyond 1e-8
    monkeypatch.setattr(sf, "ORDER_FD_STEP", 0.3)
    with pytest.raises(CrossCheckFailed):
        sf.bessel_j_order_derivative(0.3, 5.0)
    assert sf.bessel_j_order_derivative(0.3, 5.0, crosscheck=False) != 0


# --- I1 -------------------------------------------------------------------------

def test_i1():
    assert sf.bessel_i1(0) == 0
    x = 1e-3
    assert sf.bessel_i1(x) == pytest.approx(x / 2 + x ** 3 / 16, rel=1e-12)
    partial = math.fsum(1.0 / (math.factorial(m) * math.factorial(m + 1)) for m in range(30))
    assert sf.bessel_i1(2.0) == pytest.approx(partial, rel=1e-15)
    for x in (0.5, 7.0, 50.0, 600.0):
        assert sf.bessel_i1(x) == pytest.approx(float(mpmath.besseli(1, x)), rel=1e-14)
    with pytest.raises(OverflowError):
        sf.bessel_i1(701)
    with pytest.raises(ValueError):
        sf.bessel_i1(-1)
