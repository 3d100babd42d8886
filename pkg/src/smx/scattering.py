"""The exponential potential V(r) = -V0 exp(-r/a) and its s-wave scattering data.

Units are fixed by 2m/hbar**2 = 1, so E = k**2 and the radial equation reads

    u''(r) + [k**2 + U0 exp(-r/a)] u(r) = 0.

After the substitution x = alpha * exp(-r/(2a)), alpha = 2a sqrt(U0), this is
Bessel's equation of order i*rho with rho = 2ak.  Most functions below are
written in terms of that order, ``w = i*rho = 2aik``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from smx import specfun as sf
from smx.errors import (
    EvaluationAtOrigin,
    PoleAtNonPositiveInteger,
    PoleProximity,
    SingularAtRedundantZeroPoint,
    UnwrapAmbiguity,
)

# guard radius, in the order variable i*rho, around the integer points
POLE_GUARD = 1e-9
# |J_n(alpha)| below this means a bound state sits on the redundant point k_n
COINCIDENCE_TOL = 1e-10
# closer than this to an integer order, phi is averaged over a circle in the order plane
JJ_FORM_MIN_DIST = 0.05
MEAN_VALUE_RADIUS = 0.25
MEAN_VALUE_NODES = 32


@dataclass(frozen=True)
class ModelParams:
    """Range ``a`` and dimensionless strength ``alpha = 2 a sqrt(U0)``."""

    a: float
    alpha: float

    def __post_init__(self):
        if not (self.a > 0 and math.isfinite(self.a)):
            raise ValueError("a must be positive")
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ValueError("alpha must be positive")

    @property
    def U0(self) -> float:
        return self.alpha ** 2 / (4.0 * self.a ** 2)

    @classmethod
    def from_strength(cls, a: float, U0: float) -> "ModelParams":
        return cls(a=a, alpha=2.0 * a * math.sqrt(U0))


@dataclass(frozen=True)
class Momentum:
    k: complex
    a: float

    @property
    def rho(self) -> complex:
        return 2.0 * self.a * complex(self.k)

    @property
    def order(self) -> complex:
        """The Bessel order i*rho."""
        return 1j * self.rho


@dataclass(frozen=True)
class RadialPoint:
    r: float
    params: ModelParams

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be non-negative")

    @property
    def sigma(self) -> float:
        return math.exp(-self.r / self.params.a)

    @property
    def x(self) -> float:
        return self.params.alpha * math.exp(-self.r / (2.0 * self.params.a))


def order(p: ModelParams, k) -> complex:
    """i*rho = 2aik."""
    return 2j * p.a * complex(k)


def momentum_of_order(p: ModelParams, w) -> complex:
    return complex(w) / (2j * p.a)


def redundant_pole(p: ModelParams, n: int) -> complex:
    """Location k_n = i n / (2a) of the n-th redundant pole."""
    return 1j * n / (2.0 * p.a)


def _nearest_integer_order(w: complex):
    n = int(round(w.real))
    return n, abs(w - n)


def s_matrix(p: ModelParams, k) -> complex:
    """S(k) = J_w(alpha) Gamma(1+w) / [J_{-w}(alpha) Gamma(1-w)] (alpha/2)**(-2w).

    Assembled in log form so that the Gamma factors and the Bessel
    prefactors, which individually over/underflow for large |rho|, are
    combined before exponentiation.
    """
    k = complex(k)
    if k == 0:
        raise EvaluationAtOrigin("S(k) is not evaluated at k = 0")
    w = order(p, k)
    n, dist = _nearest_integer_order(w)
    if n != 0 and dist < POLE_GUARD:
        if n < 0:
            raise PoleProximity(k, redundant_pole(p, -n), "pole")
        raise PoleProximity(k, -redundant_pole(p, n), "zero")
    alpha = p.alpha
    lp_num, s_num = sf._bessel_j_parts(w, alpha, sf.DEFAULT_POLICY)
    lp_den, s_den = sf._bessel_j_parts(-w, alpha, sf.DEFAULT_POLICY)
    if s_den == 0:
        raise PoleProximity(k, k, "pole")
    log_mag = (sf._loggamma(1.0 + w) - sf._loggamma(1.0 - w)
               + lp_num - lp_den - 2.0 * w * math.log(0.5 * alpha))
    return cmath.exp(log_mag) * (s_num / s_den)


def _jost(p: ModelParams, w: complex) -> complex:
    # F(w) = 0F1(; 1 - w; -alpha^2/4); F_+ is F(w), F_- is F(-w)
    n, dist = _nearest_integer_order(w)
    if n >= 1 and dist < sf.POLE_TOL:
        if abs(sf.bessel_j_cx_order(n, p.alpha)) < COINCIDENCE_TOL:
            return _jost_coincident(p, n)
        raise PoleAtNonPositiveInteger(1.0 - w)
    return sf.hyp0f1(1.0 - w, -0.25 * p.alpha ** 2)


def _jost_coincident(p: ModelParams, n: int) -> complex:
    # J_{-w}(alpha) and 1/Gamma(1-w) both vanish at w = n when J_n(alpha) = 0;
    # the quotient tends to (-1)^(n+1) dJ_mu/dmu|_{mu=-n} / (n-1)!
    djm = sf.bessel_j_order_derivative(-n, p.alpha)
    limit = (-1.0) ** (n + 1) * djm / math.factorial(n - 1)
    return complex((0.5 * p.alpha) ** n * limit)


def jost_plus(p: ModelParams, k) -> complex:
    """F_+(k) = 0F1(; 1 - i rho; -alpha**2/4).

    Entire in k except at i*rho = n >= 1 (the redundant zeros of S in the
    lower half plane), where it has poles unless J_n(alpha) = 0; in that
    exceptional case the finite limit is returned.
    """
    return _jost(p, order(p, k))


def jost_minus(p: ModelParams, k) -> complex:
    """F_-(k): F_+ with i*rho replaced by -i*rho; poles at the redundant k_n."""
    return _jost(p, -order(p, k))


def jost_plus_bessel(p: ModelParams, k) -> complex:
    """F_+(k) through J_{-w}(alpha) Gamma(1-w) (alpha/2)**w (second route)."""
    w = order(p, k)
    return (sf.bessel_j_cx_order(-w, p.alpha) * sf.gamma_cx(1.0 - w)
            * cmath.exp(w * math.log(0.5 * p.alpha)))


def _phi_jj(p: ModelParams, w: complex, x: float) -> complex:
    # Y_w = (J_w cos(pi w) - J_{-w}) / sin(pi w); the J_w J_w cos terms cancel
    # analytically, and they are the large ones when |rho| grows
    alpha = p.alpha
    jj = (sf.bessel_j_cx_order(w, alpha) * sf.bessel_j_cx_order(-w, x)
          - sf.bessel_j_cx_order(-w, alpha) * sf.bessel_j_cx_order(w, x))
    return math.pi * p.a * jj / sf.sinpi_cx(w)


def _phi_of_x(p: ModelParams, w: complex, x: float) -> complex:
    n, dist = _nearest_integer_order(w)
    if dist > JJ_FORM_MIN_DIST:
        return _phi_jj(p, w, x)
    # phi is entire in w; near an integer take the mean over a circle in the
    # order plane, where the J/J form is well conditioned
    total = 0j
    for j in range(MEAN_VALUE_NODES):
        total += _phi_jj(p, w + MEAN_VALUE_RADIUS * cmath.exp(2j * math.pi * (j + 0.5) / MEAN_VALUE_NODES), x)
    return total / MEAN_VALUE_NODES


def regular_solution(p: ModelParams, k, r: float) -> complex:
    """phi(k, r) = pi a [Y_w(alpha) J_w(x) - J_w(alpha) Y_w(x)], x = alpha exp(-r/2a).

    phi(0) = 0 and phi'(0) = 1, and phi does not vanish at integer orders.
    Numerically the equivalent J_w, J_{-w} combination over sin(pi w) is
    used, which avoids cancelling two terms of size exp(pi |rho|); within
    0.05 of an integer order the value is the mean over a circle of radius
    1/4 around w, exact for an entire function.
    """
    r = float(r)
    if r < 0:
        raise ValueError("r must be non-negative")
    if r == 0.0:
        return 0j
    return _phi_of_x(p, order(p, k), p.alpha * math.exp(-r / (2.0 * p.a)))


def regular_solution_slope(p: ModelParams, k, h: float | None = None) -> complex:
    """phi'(0) from a Richardson-extrapolated symmetric difference.

    Central differences at steps h and h/2 (default h = 1e-4 a) are combined
    as (4 D(h/2) - D(h)) / 3.  The solution is continued to r < 0 through
    x = alpha exp(|r|/2a) > alpha, harmless since the series is entire in x.
    """
    if h is None:
        h = 1e-4 * p.a
    w = order(p, k)

    def central(step):
        xp = p.alpha * math.exp(-step / (2.0 * p.a))
        xm = p.alpha * math.exp(step / (2.0 * p.a))
        return (_phi_of_x(p, w, xp) - _phi_of_x(p, w, xm)) / (2.0 * step)

    return (4.0 * central(0.5 * h) - central(h)) / 3.0


def _irregular(p: ModelParams, w: complex, r: float, derivative: bool) -> complex:
    # Gamma(1-w) (alpha/2)^w J_{-w}(x) and, optionally, its r-derivative
    x = p.alpha * math.exp(-r / (2.0 * p.a))
    pref = cmath.exp(sf._loggamma(1.0 - w) + w * math.log(0.5 * p.alpha))
    if not derivative:
        return pref * sf.bessel_j_cx_order(-w, x)
    return pref * sf.bessel_jp_cx_order(-w, x) * (-x / (2.0 * p.a))


def _check_irregular(p: ModelParams, w: complex, k: complex):
    n, dist = _nearest_integer_order(w)
    if n >= 1 and dist < POLE_GUARD:
        raise SingularAtRedundantZeroPoint(
            f"f(k, r) is singular at k = {k!r} (i*rho within {POLE_GUARD} of {n})")


def irregular_solution_plus(p: ModelParams, k, r: float, derivative: bool = False) -> complex:
    """f_+(k, r) = Gamma(1 - i rho) (alpha/2)**(i rho) J_{-i rho}(x) ~ exp(ikr).

    With ``derivative=True`` returns d f_+/dr instead.
    """
    w = order(p, k)
    _check_irregular(p, w, complex(k))
    return _irregular(p, w, float(r), derivative)


def irregular_solution_minus(p: ModelParams, k, r: float, derivative: bool = False) -> complex:
    """f_-(k, r) ~ exp(-ikr): f_+ with i*rho -> -i*rho."""
    w = -order(p, k)
    _check_irregular(p, w, complex(k))
    return _irregular(p, w, float(r), derivative)


def irregular_wronskian(p: ModelParams, k, r: float) -> complex:
    """W_r{f_+, f_-} = f_+ f_-' - f_+' f_-, evaluated numerically at r."""
    fp = irregular_solution_plus(p, k, r)
    fm = irregular_solution_minus(p, k, r)
    dfp = irregular_solution_plus(p, k, r, derivative=True)
    dfm = irregular_solution_minus(p, k, r, derivative=True)
    return fp * dfm - dfp * fm


def phase_shift(p: ModelParams, k_grid: Sequence[float]) -> list[float]:
    """delta(k) with S(k) = exp(2 i delta(k)) on a real, ascending grid.

    The branch is fixed at the largest k (principal value, delta -> 0 as
    k -> infinity) and continued downward.  A step of pi/4 or more between
    neighbours is treated as ambiguous.
    """
    ks = [float(k) for k in k_grid]
    if not ks:
        return []
    if ks[0] <= 0 or any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValueError("k_grid must be positive and strictly ascending")
    raw = [0.5 * cmath.phase(s_matrix(p, k)) for k in ks]
    out = [0.0] * len(ks)
    out[-1] = raw[-1]
    for i in range(len(ks) - 2, -1, -1):
        ref = out[i + 1]
        d = raw[i] + math.pi * round((ref - raw[i]) / math.pi)
        if abs(d - ref) >= 0.25 * math.pi:
            raise UnwrapAmbiguity(
                f"phase jumps by {d - ref:.3f} between k={ks[i]} and k={ks[i + 1]}")
        out[i] = d
    return out
