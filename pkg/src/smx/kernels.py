"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
fallback is used.  Set ``SMX_PURE_PYTHON=1`` to force the fallback.
"""
import os

from smx import _pykernels

POLE = _pykernels.POLE
NOT_CONVERGED = _pykernels.NOT_CONVERGED

_impl = _pykernels
BACKEND = "python"
if os.environ.get("SMX_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from smx import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:  # extension not built
        pass

hyp0f1_series = _impl.hyp0f1_series
numerov = _impl.numerov
hyp0f1_series_dd = _impl.hyp0f1_series_dd
hyp0f1_series_cdd = _impl.hyp0f1_series_cdd

# error-free transforms used to prepare double-double inputs
two_sum = _pykernels._two_sum
two_prod = _pykernels._two_prod
