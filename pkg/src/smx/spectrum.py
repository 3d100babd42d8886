"""Bound states, residues of S(k), and the Heisenberg condition.

A bound state k = i*kappa is a zero of J_nu(alpha) in the order nu = 2*a*kappa.
S(k) has a simple pole there and at each redundant point k_n = i n/(2a),
where Gamma(1 + i rho) blows up.  The residues are assembled in closed form
here; :mod:`smx.oracle` supplies the contour-integral cross-check.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

from smx import specfun as sf
from smx.errors import CoincidentPhysicalPole, DegenerateZero, NotABoundState
from smx.scattering import COINCIDENCE_TOL, ModelParams, redundant_pole

# bracketing grid in kappa, in units of 1/a
SCAN_STEP = 0.01
SCAN_MARGIN = 0.5
BISECT_TOL = 1e-13
BOUND_STATE_TOL = 1e-9
REAL_PART_TOL = 1e-10
DEGENERATE_TOL = 1e-12


class Method(str, enum.Enum):
    analytic_residue = "analytic_residue"
    contour = "contour"


@dataclass(frozen=True)
class BoundState:
    kappa: float
    nu: float
    norm_integral: float
    c_l_squared: float
    residue_lhs: float

    @property
    def k(self) -> complex:
        return 1j * self.kappa


@dataclass(frozen=True)
class RedundantPole:
    n: int
    k_n: complex
    residue_analytic: float
    residue_contour: float | None = None


@dataclass
class HeisenbergReport:
    bound_states: list = field(default_factory=list)
    ratios: list = field(default_factory=list)
    method: Method = Method.analytic_residue
    lhs: list = field(default_factory=list)


def _j(p: ModelParams, nu: float) -> float:
    return sf.bessel_j_cx_order(nu, p.alpha).real


def bound_state_kappas(p: ModelParams, step: float | None = None) -> list[float]:
    """Zeros kappa > 0 of J_{2 a kappa}(alpha), descending.

    The scan runs over [0, alpha/(2a) + 0.5/a] in steps of ``step`` (default
    0.01/a); sign changes are then bisected below 1e-13.  J_nu(alpha) has no
    zero for nu > alpha, so the margin is only a safety net.
    """
    a = p.a
    h = SCAN_STEP / a if step is None else float(step)
    kmax = p.alpha / (2.0 * a) + SCAN_MARGIN / a
    npts = int(math.ceil(kmax / h))
    roots = []
    k_prev = 0.0
    f_prev = _j(p, 0.0)
    for i in range(1, npts + 1):
        k = i * h
        f = _j(p, 2.0 * a * k)
        if f == 0.0:
            roots.append(k)
        elif f_prev != 0.0 and (f < 0.0) != (f_prev < 0.0):
            lo, hi, flo = k_prev, k, f_prev
            while hi - lo > BISECT_TOL:
                mid = 0.5 * (lo + hi)
                if mid <= lo or mid >= hi:
                    break
                fm = _j(p, 2.0 * a * mid)
                if fm == 0.0:
                    lo = hi = mid
                    break
                if (fm < 0.0) == (flo < 0.0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
        k_prev, f_prev = k, f
    return sorted((r for r in roots if r > 0.0), reverse=True)


def _check_bound(p: ModelParams, kappa: float) -> float:
    nu = 2.0 * p.a * kappa
    if not kappa > 0 or abs(_j(p, nu)) > BOUND_STATE_TOL:
        raise NotABoundState(f"J_{nu}({p.alpha}) does not vanish at kappa = {kappa}")
    return nu


def bound_state_norm_integral(p: ModelParams, kappa: float) -> float:
    """Closed form of the integral over r in [0, inf) of J_nu(x(r))**2.

    At a zero of J_nu(alpha) it reduces to
    (alpha / (2 kappa)) J_{nu+1}(alpha) dJ_nu(alpha)/dnu.
    """
    nu = _check_bound(p, kappa)
    djdnu = sf.bessel_j_order_derivative(nu, p.alpha)
    return p.alpha / (2.0 * kappa) * _j(p, nu + 1.0) * djdnu


def _c_l_squared(p: ModelParams, nu: float, norm: float) -> float:
    log_val = (math.log(2.0 * math.pi) - 2.0 * math.lgamma(1.0 + nu)
               + 2.0 * nu * math.log(0.5 * p.alpha))
    return math.exp(log_val) / norm


def c_l_squared(p: ModelParams, bs: BoundState) -> float:
    """|C_l|^2 = 2 pi (alpha/2)**(4 a kappa) / [Gamma(1 + 2 a kappa)**2 N]."""
    nu = _check_bound(p, bs.kappa)
    return _c_l_squared(p, nu, bs.norm_integral)


def _jminus_gamma(p: ModelParams, nu: float) -> complex:
    # J_{-nu}(alpha) Gamma(1 - nu), finite also when nu = n hits a pole of Gamma
    n = round(nu)
    if n >= 1 and abs(nu - n) < sf.POLE_TOL:
        if abs(_j(p, float(n))) >= COINCIDENCE_TOL:
            raise NotABoundState(f"nu = {n} is not a zero of J_nu({p.alpha})")
        djm = sf.bessel_j_order_derivative(-float(n), p.alpha)
        return complex((-1.0) ** (n + 1) * djm / math.factorial(n - 1))
    return sf.bessel_j_cx_order(-nu, p.alpha) * sf.gamma_cx(1.0 - nu)


def bound_residue_analytic(p: ModelParams, bs: BoundState | float) -> float:
    """2 pi i Res S at k = i kappa, which is real and positive.

    With w = 2aik = -nu at the pole, only J_{-w}(alpha) vanishes; its
    k-derivative is -2ai dJ_mu(alpha)/dmu at mu = nu.  The power
    (alpha/2)**(-2w) is kept complex so that a wrong branch would show up
    as an imaginary part, which is rejected above 1e-10 of the magnitude.
    """
    kappa = bs.kappa if isinstance(bs, BoundState) else float(bs)
    nu = _check_bound(p, kappa)
    djdnu = sf.bessel_j_order_derivative(nu, p.alpha)
    if abs(djdnu) < DEGENERATE_TOL:
        raise DegenerateZero(f"dJ/dnu = {djdnu:g} at nu = {nu}; the zero is not simple")
    w = complex(-nu)
    num = _jminus_gamma(p, nu) * cmath.exp(-2.0 * w * math.log(0.5 * p.alpha))
    den = -2j * p.a * djdnu * sf.gamma_cx(1.0 - w)
    val = 2j * math.pi * num / den
    if abs(val.imag) > REAL_PART_TOL * abs(val):
        raise ArithmeticError(f"bound-state residue {val!r} is not real")
    return val.real


def find_bound_states(p: ModelParams, step: float | None = None) -> list[BoundState]:
    """All bound states for ``p``, sorted by kappa descending."""
    out = []
    for kappa in bound_state_kappas(p, step):
        nu = 2.0 * p.a * kappa
        norm = bound_state_norm_integral(p, kappa)
        out.append(BoundState(
            kappa=kappa,
            nu=nu,
            norm_integral=norm,
            c_l_squared=_c_l_squared(p, nu, norm),
            residue_lhs=bound_residue_analytic(p, kappa),
        ))
    return out


def redundant_residue_analytic(p: ModelParams, n: int, allow_coincident: bool = False) -> float:
    """2 pi i Res S at the redundant pole k_n = i n/(2a).

    Only Gamma(1 + w) is singular there (w = -n); its residue is
    -gamma_residue_at(n) and J_{-n} = (-1)**n J_n collapses the Bessel
    ratio, leaving -(pi/a) (alpha/2)**(2n) / (n! (n-1)!).  The value is
    negative: a counter-clockwise contour integral around k_n confirms it.

    When J_n(alpha) = 0 the pole is a bound state and this raises, unless
    ``allow_coincident`` is set; the closed form is then the (negative) part of
    the merged residue that adds to |C_l|^2.
    """
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    n = int(n)
    if not allow_coincident and abs(_j(p, float(n))) < COINCIDENCE_TOL:
        raise CoincidentPhysicalPole(
            f"J_{n}({p.alpha}) = 0: the pole at k_{n} is a bound state")
    res_w = -sf.gamma_residue_at(n)  # Gamma(1 + w) at w = -n
    log_mag = 2 * n * math.log(0.5 * p.alpha) - math.lgamma(n + 1.0)
    # (-1)^n from J_{-n}/J_n times res_w; dw/dk = 2ai
    return (math.pi / p.a) * (-1.0) ** n * res_w * math.exp(log_mag)


def redundant_poles(p: ModelParams, n_max: int, contour: bool = True) -> list[RedundantPole]:
    from smx import oracle

    out = []
    for n in range(1, n_max + 1):
        kn = redundant_pole(p, n)
        analytic = redundant_residue_analytic(p, n)
        cval = None
        if contour:
            spec = oracle.default_contour(p, kn)
            cval = oracle.contour_residue(p, spec).real
        out.append(RedundantPole(n=n, k_n=kn, residue_analytic=analytic, residue_contour=cval))
    return out


def redundant_q(p: ModelParams, r_plus_rprime: float) -> float:
    """q = (alpha/2) exp(-(r + r')/(4a))."""
    return 0.5 * p.alpha * math.exp(-r_plus_rprime / (4.0 * p.a))


def redundant_series(q: float, terms: int) -> float:
    """sum_{n=1}^{terms} q**(2n) / (n! (n-1)!), summed from the small end."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    q2 = q * q
    t = q2  # n = 1
    vals = [t]
    for n in range(2, terms + 1):
        t *= q2 / (n * (n - 1))
        vals.append(t)
    return math.fsum(vals)


# Argument of I_1 in the closed form, settled by resolve_i1_argument():
# sum_{n>=1} q^(2n)/(n!(n-1)!) = q I_1(2q).
I1_ARGUMENT_SCALE = 2.0


def redundant_pole_sum(p: ModelParams, r_plus_rprime: float, terms: int = 50):
    """(partial_sum, closed_form) for the sum over redundant poles.

    partial_sum = (pi/a) sum_{n=1}^{terms} q**(2n)/(n!(n-1)!) and
    closed_form = (pi/a) q I_1(2q).  Both are the magnitudes of the
    redundant contributions (every residue itself is negative).
    """
    if r_plus_rprime <= 0:
        raise ValueError("r + r' must be positive")
    q = redundant_q(p, r_plus_rprime)
    pref = math.pi / p.a
    return pref * redundant_series(q, terms), pref * q * sf.bessel_i1(I1_ARGUMENT_SCALE * q)


@dataclass(frozen=True)
class I1Verdict:
    q: float
    partial: float
    err_q: float
    err_2q: float

    @property
    def scale(self) -> float | None:
        ok = [s for s, e in ((1.0, self.err_q), (2.0, self.err_2q)) if e < 1e-12]
        return ok[0] if len(ok) == 1 else None


def resolve_i1_argument(q: float = 0.5, terms: int = 50) -> I1Verdict:
    """Compare the partial sum with q I_1(q) and q I_1(2q)."""
    s = redundant_series(q, terms)
    e1 = abs(q * sf.bessel_i1(q) / s - 1.0)
    e2 = abs(q * sf.bessel_i1(2.0 * q) / s - 1.0)
    return I1Verdict(q=q, partial=s, err_q=e1, err_2q=e2)


def large_n_limit_check(p: ModelParams, n: int):
    """(S(i(n + 1/2)/(2a)), 2 (2n)!! / [(2n-1)!! sqrt(2 pi (2n+1))]).

    The double-factorial ratio is 4**n (n!)**2 / (2n)!, taken through lgamma.
    S is real on the imaginary axis; an imaginary part above 1e-10 of the
    modulus raises.
    """
    from smx.scattering import s_matrix

    if n < 1:
        raise ValueError("n must be >= 1")
    s = s_matrix(p, 1j * (n + 0.5) / (2.0 * p.a))
    if abs(s.imag) > REAL_PART_TOL * abs(s):
        raise ArithmeticError(f"S = {s!r} is not real on the imaginary axis")
    log_ratio = n * math.log(4.0) + 2.0 * math.lgamma(n + 1.0) - math.lgamma(2.0 * n + 1.0)
    asym = 2.0 * math.exp(log_ratio) / math.sqrt(2.0 * math.pi * (2 * n + 1))
    return s.real, asym


def heisenberg_report(p: ModelParams, method: Method | str = Method.analytic_residue) -> HeisenbergReport:
    """R_H = lhs / |C_l|^2 for every bound state, lhs from ``method``."""
    method = Method(method)
    states = find_bound_states(p)
    lhs = []
    if method is Method.analytic_residue:
        lhs = [bs.residue_lhs for bs in states]
    else:
        from smx import oracle

        others = [bs.k for bs in states]
        for bs in states:
            spec = oracle.default_contour(p, bs.k, others)
            lhs.append(oracle.contour_residue(p, spec).real)
    ratios = [v / bs.c_l_squared for v, bs in zip(lhs, states)]
    return HeisenbergReport(bound_states=states, ratios=ratios, method=method, lhs=lhs)


def reduced_identity_check(p: ModelParams, kappa: float) -> float:
    """J_{-nu}(alpha) J_{nu+1}(alpha) + 2 sin(pi nu)/(pi alpha), nu = 2 a kappa.

    Zero at bound states only; for generic kappa it is not.
    """
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    nu = 2.0 * p.a * kappa
    lhs = _j(p, -nu) * _j(p, nu + 1.0)
    rhs = -2.0 * sf.sinpi_cx(nu).real / (math.pi * p.alpha)
    return lhs - rhs
