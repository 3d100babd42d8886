"""Special functions of complex order and real positive argument.

Inputs and outputs are doubles.  Where the ascending series cancels badly
(real orders always, complex orders when the term moduli dwarf the sum) the
sum itself is carried in double-double.  No module state is mutated after
import, so the functions are safe to call from any thread.

Complex values are plain Python ``complex``.  Powers ``(x/2)**nu`` are always
taken as ``exp(nu * log(x/2))`` with the real logarithm, which is why every
Bessel routine rejects ``x <= 0``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from smx import kernels
from smx.errors import (
    CrossCheckFailed,
    DomainTooSmall,
    PoleAtNonPositiveInteger,
    SeriesNotConverged,
)

__all__ = [
    "SeriesPolicy",
    "DEFAULT_POLICY",
    "gamma_cx",
    "loggamma_cx",
    "rgamma_cx",
    "gamma_residue_at",
    "digamma_cx",
    "sinpi_cx",
    "cospi_cx",
    "bessel_j_cx_order",
    "bessel_jp_cx_order",
    "bessel_y_cx_order",
    "bessel_yp_cx_order",
    "bessel_j_order_derivative",
    "bessel_i1",
    "hyp0f1",
]

POLE_TOL = 1e-13
# below this distance from an integer order, Y is taken as its limiting value
Y_LIMIT_DIST = 1e-5
Y_RICHARDSON_STEPS = (1e-4, 5e-5)
ORDER_FD_STEP = 1e-6
# re-sum in double-double when the term moduli add up to more than this
# multiple of the result, i.e. when about one digit is lost to cancellation
CANCELLATION_LIMIT = 8.0

_EPS = 2.220446049250313e-16
_LOG_PI = math.log(math.pi)
_LOG_2 = math.log(2.0)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# B_2k / (2k) for the digamma asymptotic series
_DIGAMMA_ASYM = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
)


@dataclass(frozen=True)
class SeriesPolicy:
    """Truncation control for the ascending series.

    A series stops once three consecutive terms fall below
    ``rel_tol * |partial sum|``.
    """

    rel_tol: float = 1e-15
    max_terms: int = 500

    def __post_init__(self):
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError("rel_tol must lie in (0, 1)")
        if int(self.max_terms) != self.max_terms or self.max_terms < 50:
            raise ValueError("max_terms must be an integer >= 50")


DEFAULT_POLICY = SeriesPolicy()


def _nearest_int(z: complex) -> int:
    return int(round(z.real))


def _near_nonpositive_integer(z: complex, tol: float = POLE_TOL) -> bool:
    n = _nearest_int(z)
    return n <= 0 and abs(z - n) < tol


def _exact_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


# --- trigonometric helpers with exact argument reduction -------------------

def _reduce(x: float):
    n = round(x)
    return x - n, int(n)


def sinpi_cx(z) -> complex:
    """``sin(pi z)``; exact zeros at integers, no loss near them."""
    z = complex(z)
    f, n = _reduce(z.real)
    s = complex(math.sin(math.pi * f) * math.cosh(math.pi * z.imag),
                math.cos(math.pi * f) * math.sinh(math.pi * z.imag))
    return -s if n % 2 else s


def cospi_cx(z) -> complex:
    z = complex(z)
    f, n = _reduce(z.real)
    c = complex(math.cos(math.pi * f) * math.cosh(math.pi * z.imag),
                -math.sin(math.pi * f) * math.sinh(math.pi * z.imag))
    return -c if n % 2 else c


def _log_sinpi(z: complex) -> complex:
    # some logarithm of sin(pi z); callers only exponentiate it
    f, n = _reduce(z.real)
    y = z.imag
    shift = 1j * math.pi if n % 2 else 0.0
    if abs(y) < 20.0:
        s = complex(math.sin(math.pi * f) * math.cosh(math.pi * y),
                    math.cos(math.pi * f) * math.sinh(math.pi * y))
        return cmath.log(s) + shift
    zeta = complex(f, y)
    if y > 0:
        return (-_LOG_2 + 0.5j * math.pi - 1j * math.pi * zeta
                + cmath.log(1.0 - cmath.exp(2j * math.pi * zeta)) + shift)
    return (-_LOG_2 - 0.5j * math.pi + 1j * math.pi * zeta
            + cmath.log(1.0 - cmath.exp(-2j * math.pi * zeta)) + shift)


def _cotpi(z: complex) -> complex:
    if z.imag > 20.0:
        return -1j
    if z.imag < -20.0:
        return 1j
    return cospi_cx(z) / sinpi_cx(z)


# --- Gamma family ----------------------------------------------------------

def _loggamma(z: complex) -> complex:
    if z.real < 0.5:
        return _LOG_PI - _log_sinpi(z) - _loggamma(1.0 - z)
    z = z - 1.0
    x = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        x += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def loggamma_cx(z) -> complex:
    """A logarithm of Gamma(z) (not necessarily the principal branch)."""
    z = complex(z)
    if _near_nonpositive_integer(z):
        raise PoleAtNonPositiveInteger(z)
    return _loggamma(z)


def gamma_cx(z) -> complex:
    """Gamma(z) for complex z.

    Lanczos approximation for ``Re z >= 1/2`` and the reflection formula
    below that, both assembled in log form so large imaginary parts neither
    overflow nor underflow prematurely.
    """
    z = complex(z)
    if _near_nonpositive_integer(z):
        raise PoleAtNonPositiveInteger(z)
    return cmath.exp(_loggamma(z))


def rgamma_cx(z) -> complex:
    """1/Gamma(z), entire; exactly zero at the non-positive integers."""
    z = complex(z)
    if _exact_nonpositive_integer(z):
        return 0j
    if z.real < 0.5:
        return cmath.exp(_log_sinpi(z) + _loggamma(1.0 - z) - _LOG_PI)
    return cmath.exp(-_loggamma(z))


def _log_rgamma(z: complex) -> complex:
    return -_loggamma(z)


def gamma_residue_at(n: int) -> float:
    """Residue of Gamma(1 - w) in the variable w at w = n, i.e. (-1)**n/(n-1)!.

    The residue of Gamma(1 + w) at w = -n is the negative of this value.
    """
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    n = int(n)
    return (-1.0) ** n / math.factorial(n - 1)


def digamma_cx(z) -> complex:
    """psi(z) = Gamma'(z)/Gamma(z)."""
    z = complex(z)
    if _near_nonpositive_integer(z):
        raise PoleAtNonPositiveInteger(z)
    if z.real < 0.5:
        return digamma_cx(1.0 - z) - math.pi * _cotpi(z)
    acc = 0j
    while z.real < 10.0:
        acc -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    tail = 0j
    p = inv2
    for c in _DIGAMMA_ASYM:
        tail += c * p
        p *= inv2
    return acc + cmath.log(z) - 0.5 / z - tail


# --- series ----------------------------------------------------------------

def _series(b: complex, z: complex, policy: SeriesPolicy,
            b_lo: float = 0.0, z_lo: float = 0.0) -> complex:
    # b_lo and z_lo carry the rounding error of Re b and Re z when the caller
    # knows it; they only matter for the double-double re-summation
    total, status, abs_sum = kernels.hyp0f1_series(b, z, policy.rel_tol, policy.max_terms)
    if status == kernels.POLE:
        raise PoleAtNonPositiveInteger(b)
    if status == kernels.NOT_CONVERGED:
        raise SeriesNotConverged(policy.max_terms)
    if abs_sum > CANCELLATION_LIMIT * abs(total):
        redo, status = kernels.hyp0f1_series_cdd(b.real, b_lo, b.imag, z.real, z_lo, z.imag,
                                                 policy.rel_tol, policy.max_terms)
        if status > 0:
            total = redo
    return total


def hyp0f1(b, z, policy: SeriesPolicy = DEFAULT_POLICY) -> complex:
    """Confluent limit function 0F1(; b; z) = sum z**m / ((b)_m m!)."""
    b = complex(b)
    if _near_nonpositive_integer(b):
        raise PoleAtNonPositiveInteger(b)
    return _series(b, complex(z), policy)


def _check_arg(x: float) -> float:
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"Bessel argument must be positive, got {x}")
    return x


def _bessel_j_parts(nu: complex, x: float, policy: SeriesPolicy):
    """Return ``(log_prefactor, series)`` with J_nu(x) = exp(log_prefactor) * series."""
    if _exact_nonpositive_integer(nu) and nu != 0:
        n = -int(nu.real)
        logpre, s = _bessel_j_parts(complex(n, 0.0), x, policy)
        return (logpre + 1j * math.pi if n % 2 else logpre), s
    half = 0.5 * x
    logpre = nu * math.log(half) + _log_rgamma(nu + 1.0)
    if nu.imag == 0.0:
        return logpre, complex(_series_real_dd(nu.real, half, policy))
    b_hi, b_lo = kernels.two_sum(nu.real, 1.0)
    z_hi, z_lo = kernels.two_prod(half, half)
    return logpre, _series(complex(b_hi, nu.imag), complex(-z_hi), policy, b_lo, -z_lo)


def _series_real_dd(nu: float, half: float, policy: SeriesPolicy) -> float:
    # For real order the series is summed in double-double.  At x ~ 15 the
    # terms reach I_nu(x) ~ 1e5 while J_nu(x) may be 1e-3, and plain doubles
    # would lose about ten digits of the result to that cancellation.
    b_hi, b_lo = kernels.two_sum(nu, 1.0)
    z_hi, z_lo = kernels.two_prod(half, half)
    total, status = kernels.hyp0f1_series_dd(b_hi, b_lo, -z_hi, -z_lo,
                                             policy.rel_tol, policy.max_terms)
    if status == kernels.POLE:
        raise PoleAtNonPositiveInteger(b_hi)
    if status == kernels.NOT_CONVERGED:
        raise SeriesNotConverged(policy.max_terms)
    return total


def bessel_j_cx_order(nu, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> complex:
    """J_nu(x) from the ascending series, complex order, real x > 0.

    J_nu(x) = (x/2)**nu / Gamma(nu+1) * 0F1(; nu+1; -x**2/4).  Exact
    negative integer orders use J_{-n} = (-1)**n J_n.
    """
    x = _check_arg(x)
    logpre, s = _bessel_j_parts(complex(nu), x, policy)
    return cmath.exp(logpre) * s


def bessel_jp_cx_order(nu, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> complex:
    """dJ_nu/dx via J' = (J_{nu-1} - J_{nu+1}) / 2."""
    nu = complex(nu)
    return 0.5 * (bessel_j_cx_order(nu - 1.0, x, policy) - bessel_j_cx_order(nu + 1.0, x, policy))


def _bessel_y_direct(nu: complex, x: float, policy: SeriesPolicy) -> complex:
    j = bessel_j_cx_order(nu, x, policy)
    jm = bessel_j_cx_order(-nu, x, policy)
    return (j * cospi_cx(nu) - jm) / sinpi_cx(nu)


def bessel_y_cx_order(nu, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> complex:
    """Y_nu(x) through the J_{+nu}, J_{-nu} connection formula.

    Within ``Y_LIMIT_DIST`` of an integer order the formula degenerates to
    0/0; there the limiting value is recovered by Richardson extrapolation of
    symmetric averages over the offsets ``Y_RICHARDSON_STEPS``.
    """
    x = _check_arg(x)
    nu = complex(nu)
    if abs(nu - _nearest_int(nu)) >= Y_LIMIT_DIST:
        return _bessel_y_direct(nu, x, policy)
    h1, h2 = Y_RICHARDSON_STEPS
    ratio2 = (h1 / h2) ** 2

    def sym(h):
        return 0.5 * (_bessel_y_direct(nu + h, x, policy) + _bessel_y_direct(nu - h, x, policy))

    return (ratio2 * sym(h2) - sym(h1)) / (ratio2 - 1.0)


def bessel_yp_cx_order(nu, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> complex:
    nu = complex(nu)
    return 0.5 * (bessel_y_cx_order(nu - 1.0, x, policy) - bessel_y_cx_order(nu + 1.0, x, policy))


def bessel_j_order_derivative(nu: float, x: float, policy: SeriesPolicy = DEFAULT_POLICY,
                              crosscheck: bool = True) -> float:
    """dJ_nu(x)/dnu for real order, by the term-wise differentiated series.

    Each term ``(-1)**m (x/2)**(nu+2m) / (m! Gamma(nu+m+1))`` contributes
    ``term * [log(x/2) - psi(nu+m+1)]``; at poles of Gamma the product
    ``-psi * rgamma`` is replaced by its finite limit ``(-1)**k k!``.

    With ``crosscheck`` the result is compared with a central difference of
    J in the order (step 1e-6).  The allowed gap is 1e-8 relative plus the
    roundoff the difference quotient inherits from series cancellation.
    """
    x = float(x)
    if x < 1e-8:
        raise DomainTooSmall(f"x = {x} is too close to 0; dJ/dnu diverges like log(x)")
    nu = float(nu)
    lh = math.log(0.5 * x)
    q = -0.25 * x * x
    base = math.exp(nu * lh)  # (-1)^m (x/2)^(nu+2m) / m!
    total = 0.0
    j_abs = 0.0
    small = 0
    for m in range(policy.max_terms):
        z = nu + m + 1.0
        if z <= 0.0 and z == math.floor(z):
            k = int(-z)
            rg = 0.0
            drg = (-1.0) ** k * math.factorial(k)
        else:
            rg = rgamma_cx(z).real
            drg = -digamma_cx(z).real * rg
        term = base * (lh * rg + drg)
        total += term
        j_abs += abs(base * rg)
        if abs(term) < policy.rel_tol * abs(total) and z > 0.0 and abs(q) < (m + 1) * z:
            small += 1
            if small == 3:
                break
        else:
            small = 0
        base *= q / (m + 1)
    else:
        raise SeriesNotConverged(policy.max_terms)

    if crosscheck:
        h = ORDER_FD_STEP
        fd = (bessel_j_cx_order(nu + h, x, policy).real
              - bessel_j_cx_order(nu - h, x, policy).real) / (2.0 * h)
        tol = 1e-8 * abs(total) + 10.0 * _EPS * j_abs / h
        if abs(fd - total) > tol:
            raise CrossCheckFailed(
                f"dJ/dnu series {total!r} vs central difference {fd!r} at nu={nu}, x={x}")
    return total


def bessel_i1(x: float) -> float:
    """Modified Bessel function I_1(x) for 0 <= x <= 700."""
    x = float(x)
    if x < 0.0:
        raise ValueError("bessel_i1 requires x >= 0")
    if x > 700.0:
        raise OverflowError("I_1(x) overflows double precision for x > 700")
    if x == 0.0:
        return 0.0
    t = 0.5 * x
    q = t * t
    term = t
    total = t
    m = 0
    while True:
        term *= q / ((m + 1) * (m + 2))
        total += term
        m += 1
        if m > t and term < 0.25 * _EPS * total:
            return total
