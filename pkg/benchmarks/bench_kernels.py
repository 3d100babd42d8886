"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--json]

Each row is the best of ``--repeat`` timing runs, in microseconds per call.
The end-to-end rows run in a subprocess with ``SMX_PURE_PYTHON`` set, since
the backend is fixed when :mod:`smx.kernels` is imported.
"""
import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from smx import _pykernels

try:
    from smx import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None


def _kernel_cases(mod):
    h = 1e-3
    r = h * np.arange(40001)
    q = 1.0 + 2.25 * np.exp(-r)
    return {
        "hyp0f1_series (b=1.3+0.8i, z=-9)": lambda: mod.hyp0f1_series(1.3 + 0.8j, -9.0 + 0j, 1e-17, 500),
        "hyp0f1_series_dd (b=2.7, z=-36)": lambda: mod.hyp0f1_series_dd(2.7, 0.0, -36.0, 0.0, 1e-17, 500),
        "hyp0f1_series_cdd (b=1+3i, z=-36)": lambda: mod.hyp0f1_series_cdd(1.0, 0.0, 3.0, -36.0, 0.0, 0.0, 1e-17, 500),
        "numerov (40001 points)": lambda: mod.numerov(q, h, 0.0, h),
    }


def _best(fn, repeat):
    timer = timeit.Timer(fn)
    n, _ = timer.autorange()
    return min(timer.repeat(repeat, n)) / n * 1e6


END_TO_END = """
import timeit
from smx.scattering import ModelParams, s_matrix
from smx import spectrum
p = ModelParams(1.0, 8.0)
t1 = min(timeit.repeat(lambda: s_matrix(p, 0.7 + 0.2j), number=200, repeat={r})) / 200
t2 = min(timeit.repeat(lambda: spectrum.heisenberg_report(p), number=3, repeat={r})) / 3
print(t1 * 1e6, t2 * 1e6)
"""


def _end_to_end(pure, repeat):
    env = dict(os.environ)
    env.pop("SMX_PURE_PYTHON", None)
    if pure:
        env["SMX_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", END_TO_END.format(r=repeat)], env=env,
                         capture_output=True, text=True, check=True).stdout
    return [float(x) for x in out.split()]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true", help="print JSON instead of a table")
    args = ap.parse_args(argv)
    if _ckernels is None:
        sys.exit("compiled extension not built; run `python setup.py build_ext --inplace`")

    rows = []
    py_cases, cy_cases = _kernel_cases(_pykernels), _kernel_cases(_ckernels)
    for name in py_cases:
        rows.append((name, _best(py_cases[name], args.repeat), _best(cy_cases[name], args.repeat)))
    py_e2e, cy_e2e = _end_to_end(True, args.repeat), _end_to_end(False, args.repeat)
    rows.append(("s_matrix (alpha=8)", py_e2e[0], cy_e2e[0]))
    rows.append(("heisenberg_report (alpha=8)", py_e2e[1], cy_e2e[1]))

    if args.json:
        print(json.dumps([{"case": n, "python_us": p, "cython_us": c, "speedup": p / c}
                          for n, p, c in rows], indent=2))
        return
    width = max(len(n) for n, _, _ in rows)
    print(f"{'case':<{width}}  {'python us':>12}  {'cython us':>12}  {'speedup':>8}")
    for name, p, c in rows:
        print(f"{name:<{width}}  {p:12.2f}  {c:12.2f}  {p / c:7.1f}x")


if __name__ == "__main__":
    main()
