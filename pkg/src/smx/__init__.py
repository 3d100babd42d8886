"""S-matrix, Jost functions and bound states of the exponential potential.

Submodules:

``specfun``
    complex-order Bessel functions, Gamma, digamma, 0F1 and I_1
``scattering``
    S(k), Jost functions, regular and irregular solutions, phase shifts
``spectrum``
    bound states, residues at physical and redundant poles, R_H
``oracle``
    Numerov, shooting, quadrature and contour integrals used as cross-checks
``cli``
    the ``smx`` command
"""
from smx.errors import SmxError
from smx.kernels import BACKEND
from smx.scattering import ModelParams, jost_minus, jost_plus, phase_shift, regular_solution, s_matrix
from smx.spectrum import BoundState, Method, find_bound_states, heisenberg_report

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundState",
    "Method",
    "ModelParams",
    "SmxError",
    "find_bound_states",
    "heisenberg_report",
    "jost_minus",
    "jost_plus",
    "phase_shift",
    "regular_solution",
    "s_matrix",
]
