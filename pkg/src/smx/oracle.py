"""Independent checks on the closed forms: ODE integration, quadrature, contours.

Nothing in here uses the Bessel series of :mod:`smx.specfun` except where
the point is to integrate a function built from it.  The radial equation is
integrated directly (Numerov), the fine zero scan uses ``scipy.special.jv``,
and residues come from trapezoidal sums on circles.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
from scipy import integrate, optimize, special

from smx import kernels
from smx.errors import GridTooCoarse, MaxDepthExceeded, PoleOnContour, PoleProximity, ProbeFailure
from smx.scattering import ModelParams, s_matrix

POLE_ON_CONTOUR = 1e12
PROBE_RTOL = 1e-8


@dataclass(frozen=True)
class NumerovGrid:
    r_max: float
    step: float

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("step must be positive")
        if not self.r_max / self.step >= 1e4 * (1 - 1e-12):
            raise ValueError("r_max/step must be at least 1e4")

    @property
    def n_points(self) -> int:
        return int(round(self.r_max / self.step)) + 1

    @classmethod
    def default(cls, p: ModelParams) -> "NumerovGrid":
        return cls(r_max=40.0 * p.a, step=1e-3 * p.a)

    def radii(self) -> np.ndarray:
        return self.step * np.arange(self.n_points, dtype=np.float64)


def _start_value(p: ModelParams, k_squared: float, h: float) -> float:
    # Taylor series of the solution with u(0) = 0, u'(0) = 1 through h^5.
    # u = h alone would make u'(0) = 1 only to O(h^2), and that error would
    # carry over to the whole solution as a constant relative offset.
    U0, a = p.U0, p.a
    q0 = k_squared + U0
    return (h - q0 * h ** 3 / 6.0 + U0 / (12.0 * a) * h ** 4
            + (q0 * q0 / 120.0 - U0 / (40.0 * a * a)) * h ** 5)


def numerov_integrate(p: ModelParams, k_squared: float, grid: NumerovGrid | None = None):
    """Integrate u'' + [k^2 + U0 exp(-r/a)] u = 0 outward from u(0) = 0, u'(0) = 1.

    Returns ``(r, u)`` as numpy arrays on ``grid`` (default 40a by 1e-3a).
    """
    grid = NumerovGrid.default(p) if grid is None else grid
    r = grid.radii()
    q = k_squared + p.U0 * np.exp(-r / p.a)
    u = kernels.numerov(q, grid.step, 0.0, _start_value(p, k_squared, grid.step))
    return r, np.asarray(u)


def _mismatch(p, kappa, grid):
    _, u = numerov_integrate(p, -kappa * kappa, grid)
    # a decaying tail has u_N = exp(-kappa h) u_{N-1}
    g = u[-1] - math.exp(-kappa * grid.step) * u[-2]
    return g, u


def _nodes(u: np.ndarray) -> int:
    s = np.sign(u[1:])
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def shooting_eigenvalues(p: ModelParams, kappa_max: float | None = None,
                         grid: NumerovGrid | None = None, scan_step: float | None = None,
                         xtol: float = 1e-12) -> list[float]:
    """Bound-state kappas from the ODE alone, in descending order.

    The tail mismatch is scanned on [0, kappa_max] (default alpha/(2a) +
    0.5/a, step 0.02/a) and each sign change refined with Brent's method.
    Between adjacent scan points the node count of u may change by at most
    one; a larger jump means two eigenvalues share a bracket, reported as
    :class:`GridTooCoarse`.
    """
    grid = NumerovGrid.default(p) if grid is None else grid
    if kappa_max is None:
        kappa_max = p.alpha / (2.0 * p.a) + 0.5 / p.a
    if kappa_max < p.alpha / (2.0 * p.a):
        raise ValueError("kappa_max must be at least alpha/(2a)")
    h = 0.02 / p.a if scan_step is None else scan_step
    ks = np.linspace(0.0, kappa_max, int(math.ceil(kappa_max / h)) + 1)
    vals = []
    for kappa in ks:
        g, u = _mismatch(p, float(kappa), grid)
        vals.append((float(kappa), g, _nodes(u)))
    roots = []
    for (k0, g0, n0), (k1, g1, n1) in zip(vals, vals[1:]):
        if abs(n1 - n0) > 1:
            raise GridTooCoarse(f"node count jumps {n0} -> {n1} on [{k0}, {k1}]")
        if g0 == 0.0 and k0 > 0:
            roots.append(k0)
        elif (g0 < 0) != (g1 < 0) and g1 != 0.0:
            roots.append(optimize.brentq(lambda k: _mismatch(p, k, grid)[0], k0, k1, xtol=xtol))
    return sorted(roots, reverse=True)


def bessel_zero_scan(p: ModelParams, step: float = 1e-4) -> list[float]:
    """Zeros of J_{2a kappa}(alpha) in kappa from a fine scan with scipy's jv.

    Independent of the series in :mod:`smx.specfun`; used to confirm the
    coarse bracketing of :func:`smx.spectrum.find_bound_states`.
    """
    a, alpha = p.a, p.alpha
    kmax = alpha / (2.0 * a) + 0.5 / a
    ks = np.arange(0.0, kmax + step, step)
    f = special.jv(2.0 * a * ks, alpha)
    idx = np.nonzero(np.signbit(f[:-1]) != np.signbit(f[1:]))[0]
    out = [optimize.brentq(lambda k: special.jv(2.0 * a * k, alpha), ks[i], ks[i + 1], xtol=1e-15)
           for i in idx]
    return sorted((k for k in out if k > 0), reverse=True)


def adaptive_quadrature(f: Callable[[float], float], lo: float, hi: float,
                        tol: float = 1e-10, max_depth: int = 200) -> float:
    """Integrate f over [lo, hi] with QUADPACK's adaptive Gauss-Kronrod scheme.

    ``tol`` is the absolute target.  When the subdivision budget
    ``max_depth`` runs out (or QUADPACK reports any other failure)
    :class:`MaxDepthExceeded` is raised instead of returning a doubtful value.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, _err = integrate.quad(f, lo, hi, epsabs=tol, epsrel=0.0, limit=max_depth)
        except integrate.IntegrationWarning as exc:
            raise MaxDepthExceeded(str(exc)) from None
    return val


@dataclass(frozen=True)
class ContourSpec:
    center: complex
    radius: float
    n_nodes: int = 256
    a: float = 1.0

    def __post_init__(self):
        if self.n_nodes < 8:
            raise ValueError("n_nodes must be at least 8")
        if not self.radius < 0.25 / self.a:
            raise ValueError("radius must be below 1/(4a)")
        if not self.radius > 1e-4 / self.a:
            raise ValueError("radius must exceed 1e-4/a")


def known_singularities(p: ModelParams, bound_kappas: Iterable[float] | None = None,
                        n_max: int | None = None) -> list[complex]:
    """Poles and zeros of S we know about: +-i kappa_l and +-i n/(2a)."""
    if bound_kappas is None:
        from smx.spectrum import bound_state_kappas

        bound_kappas = bound_state_kappas(p)
    if n_max is None:
        n_max = int(p.alpha ** 2) + 8
    pts = []
    for kappa in bound_kappas:
        pts += [1j * kappa, -1j * kappa]
    for n in range(1, n_max + 1):
        pts += [1j * n / (2.0 * p.a), -1j * n / (2.0 * p.a)]
    return pts


def default_contour(p: ModelParams, center: complex,
                    other_singularities: Iterable[complex] | None = None,
                    n_nodes: int = 256) -> ContourSpec:
    """Circle around ``center`` with radius min(1/(8a), d/3).

    d is the distance to the nearest other known pole or zero.  A third
    rather than a half keeps the probe circle (twice the radius) strictly
    away from that neighbour.  ``other_singularities`` adds to the list
    returned by :func:`known_singularities`.
    """
    center = complex(center)
    pts = known_singularities(p)
    if other_singularities is not None:
        pts += [complex(z) for z in other_singularities]
    dists = [abs(z - center) for z in pts if abs(z - center) > 1e-9]
    r = 0.125 / p.a
    if dists:
        r = min(r, min(dists) / 3.0)
    return ContourSpec(center=center, radius=r, n_nodes=n_nodes, a=p.a)


def _circle(func, center, radius, n):
    theta = 2.0 * np.pi * np.arange(n) / n
    ks = center + radius * np.exp(1j * theta)
    vals = np.empty(n, dtype=complex)
    for j, k in enumerate(ks):
        try:
            vals[j] = func(complex(k))
        except PoleProximity as exc:
            raise PoleOnContour(f"node k = {complex(k)!r} hits a singularity of S") from exc
        if not abs(vals[j]) < POLE_ON_CONTOUR:
            raise PoleOnContour(f"|S| = {abs(vals[j]):.3g} at node k = {complex(k)!r}")
    return complex(np.sum(vals * (ks - center)) * (2j * np.pi / n))


def contour_residue(p: ModelParams, spec: ContourSpec, probe: bool = True,
                    func: Callable[[complex], complex] | None = None) -> complex:
    """Counter-clockwise integral of S(k) dk around ``spec``, i.e. 2 pi i Res.

    The trapezoidal rule on a circle converges geometrically for a function
    analytic in an annulus around it.  With ``probe`` the integral is
    repeated on a circle of twice the radius with twice the nodes, and a
    different value means a second pole lies close by (:class:`ProbeFailure`).

    Zeros of S are deliberately not part of the probe.  Every redundant
    pole k_n has a zero of J_{-nu}(alpha) next to it on the imaginary axis,
    closer than 1e-7 for alpha = 1 and n = 5, so a zero inside the probe
    but outside the contour is common and leaves the integral untouched.
    """
    if func is None:
        def func(k):
            return s_matrix(p, k)
    val = _circle(func, spec.center, spec.radius, spec.n_nodes)
    if probe:
        pval = _circle(func, spec.center, 2.0 * spec.radius, 2 * spec.n_nodes)
        if abs(pval - val) > PROBE_RTOL * max(1.0, abs(val)):
            raise ProbeFailure(f"probe integral {pval!r} differs from {val!r}")
    return val
