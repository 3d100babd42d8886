"""Command line interface: ``smx <command> [options]``.

Every command writes one table, either CSV (header row first) or a JSON
object with ``params``, ``results`` and ``diagnostics``.  Floats are printed
with ``--precision`` significant digits, so repeated runs are byte-identical.

Exit status: 0 on success, 2 for bad arguments, 3 when the requested point
sits on a singularity of S.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from smx import kernels, oracle, spectrum
from smx.errors import (
    CoincidentPhysicalPole,
    EvaluationAtOrigin,
    PoleAtNonPositiveInteger,
    PoleOnContour,
    PoleProximity,
    SingularAtRedundantZeroPoint,
    SmxError,
)
from smx.scattering import ModelParams, jost_minus, jost_plus, s_matrix

EXIT_USAGE = 2
EXIT_SINGULAR = 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    a: float = 1.0
    alpha: float | None = None
    output_format: str = "csv"
    output_path: str | None = None
    precision_digits: int = 15

    def __post_init__(self):
        if not (self.a > 0 and math.isfinite(self.a)):
            raise UsageError("a must be positive")
        if self.alpha is not None and not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise UsageError("alpha must be positive")
        if not 6 <= self.precision_digits <= 17:
            raise UsageError("precision must be between 6 and 17")
        if self.output_format not in ("csv", "json"):
            raise UsageError("format must be csv or json")

    def params(self) -> ModelParams:
        if self.alpha is None:
            raise UsageError("alpha is required")
        return ModelParams(self.a, self.alpha)


@dataclass
class Table:
    columns: list
    rows: list
    diagnostics: dict
    footer: "Table | None" = None


def _fmt(x, digits):
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    x = float(x)
    if not math.isfinite(x):
        return str(x)
    return float(f"{x:.{digits}g}")


def _csv_cell(x, digits):
    if isinstance(x, float):
        if not math.isfinite(x):
            return str(x)
        return f"{x:.{digits}g}"
    return "" if x is None else str(x)


def render(cfg: RunConfig, table: Table, params: dict) -> str:
    d = cfg.precision_digits
    if cfg.output_format == "json":
        def recs(t):
            return [{c: _fmt(v, d) for c, v in zip(t.columns, row)} for row in t.rows]

        diag = {k: _fmt(v, d) if not isinstance(v, (list, dict)) else v
                for k, v in table.diagnostics.items()}
        if table.footer is not None:
            diag["footer"] = recs(table.footer)
        obj = {"params": {k: _fmt(v, d) for k, v in params.items()},
               "results": recs(table),
               "diagnostics": diag}
        return json.dumps(obj, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([_csv_cell(v, d) for v in row])
    if table.footer is not None:
        buf.write("\n")
        w.writerow(table.footer.columns)
        for row in table.footer.rows:
            w.writerow([_csv_cell(v, d) for v in row])
    return buf.getvalue()


def _max_workers() -> int:
    env = os.environ.get("SMX_MAX_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise UsageError("SMX_MAX_THREADS must be a positive integer") from None
        if n < 1:
            raise UsageError("SMX_MAX_THREADS must be a positive integer")
        return n
    return min(4, os.cpu_count() or 1)


def cmd_bound_states(cfg: RunConfig, args) -> Table:
    p = cfg.params()
    states = spectrum.find_bound_states(p)
    rows = [[i, bs.kappa, bs.nu, bs.norm_integral, bs.c_l_squared] for i, bs in enumerate(states)]
    return Table(["index", "kappa", "nu", "norm_integral", "c_l_squared"], rows,
                 {"count": len(states), "max_count": math.floor(p.alpha ** 2 / 4)})


def cmd_heisenberg(cfg: RunConfig, args) -> Table:
    p = cfg.params()
    method = args.method
    cols = ["kappa", "lhs", "rhs", "R_H", "abs_R_H_minus_1"]
    if method == "contour":
        rep = spectrum.heisenberg_report(p, spectrum.Method.contour)
    else:
        rep = spectrum.heisenberg_report(p, spectrum.Method.analytic_residue)
    rows = [[bs.kappa, lhs, bs.c_l_squared, r, abs(r - 1.0)]
            for bs, lhs, r in zip(rep.bound_states, rep.lhs, rep.ratios)]
    if method == "both":
        cols.append("cross_method_discrepancy")
        crep = spectrum.heisenberg_report(p, spectrum.Method.contour)
        for row, lc in zip(rows, crep.lhs):
            row.append(abs(lc - row[1]) / abs(row[1]))
    worst = max((row[4] for row in rows), default=0.0)
    return Table(cols, rows, {"count": len(rows), "method": method, "max_abs_R_H_minus_1": worst})


def _figure1_point(a: float, alpha: float):
    rep = spectrum.heisenberg_report(ModelParams(a, alpha))
    return [(alpha, i, bs.kappa, r) for i, (bs, r) in enumerate(zip(rep.bound_states, rep.ratios))]


def cmd_figure1(cfg: RunConfig, args) -> Table:
    if not (args.alpha_min > 0 and args.alpha_max >= args.alpha_min):
        raise UsageError("alpha range must satisfy 0 < alpha-min <= alpha-max")
    if args.steps < 1:
        raise UsageError("steps must be at least 1")
    alphas = [float(x) for x in np.linspace(args.alpha_min, args.alpha_max, args.steps)]
    workers = _max_workers()
    if workers == 1:
        chunks = [_figure1_point(cfg.a, al) for al in alphas]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(lambda al: _figure1_point(cfg.a, al), alphas))
    rows = [list(r) for chunk in chunks for r in chunk]
    worst = max((abs(r[3] - 1.0) for r in rows), default=0.0)
    branches = max((r[1] + 1 for r in rows), default=0)
    return Table(["alpha", "branch_index", "kappa", "R_H"], rows,
                 {"alpha_points": len(alphas), "branches": branches, "max_abs_R_H_minus_1": worst})


def _nearest_singularity(p: ModelParams, k: complex):
    kappas = spectrum.bound_state_kappas(p)
    best = None
    for z in oracle.known_singularities(p, kappas):
        kind = "pole" if z.imag > 0 else "zero"
        d = abs(z - k)
        if best is None or d < best[2]:
            best = (z, kind, d)
    return best


def cmd_s_eval(cfg: RunConfig, args) -> Table:
    p = cfg.params()
    k = complex(args.k_re, args.k_im)
    try:
        s = s_matrix(p, k)
    except EvaluationAtOrigin:
        raise UsageError("k = 0 is not evaluated") from None
    fp, fm = jost_plus(p, k), jost_minus(p, k)
    z, kind, d = _nearest_singularity(p, k)
    cols = ["k_re", "k_im", "S_re", "S_im", "abs_S", "Fplus_re", "Fplus_im",
            "Fminus_re", "Fminus_im", "nearest_re", "nearest_im", "nearest_kind", "distance"]
    row = [k.real, k.imag, s.real, s.imag, abs(s), fp.real, fp.imag, fm.real, fm.imag,
           z.real, z.imag, kind, d]
    return Table(cols, [row], {"backend": kernels.BACKEND})


def cmd_redundant(cfg: RunConfig, args) -> Table:
    p = cfg.params()
    if args.n_max < 1:
        raise UsageError("n-max must be at least 1")
    if not args.r_sum > 0:
        raise UsageError("r-sum must be positive")
    rows, skipped = [], []
    kappas = spectrum.bound_state_kappas(p)
    for n in range(1, args.n_max + 1):
        try:
            an = spectrum.redundant_residue_analytic(p, n)
        except CoincidentPhysicalPole:
            skipped.append(n)
            continue
        kn = 1j * n / (2.0 * p.a)
        spec = oracle.default_contour(p, kn, [1j * kap for kap in kappas])
        cval = oracle.contour_residue(p, spec).real
        rows.append([n, kn.imag, an, cval, abs(cval - an) / abs(an)])
    partial, closed = spectrum.redundant_pole_sum(p, args.r_sum, args.terms)
    q = spectrum.redundant_q(p, args.r_sum)
    footer = Table(["q", "partial_sum", "closed_form", "ratio", "i1_argument"],
                   [[q, partial, closed, partial / closed, "2q"]], {})
    return Table(["n", "k_n_im", "residue_analytic", "residue_contour", "discrepancy"], rows,
                 {"skipped_coincident": skipped}, footer)


COMMANDS = {
    "bound-states": cmd_bound_states,
    "heisenberg": cmd_heisenberg,
    "figure1": cmd_figure1,
    "s-eval": cmd_s_eval,
    "redundant": cmd_redundant,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", type=float, default=1.0, help="range parameter a (default 1)")
    common.add_argument("--alpha", type=float, default=None, help="strength alpha = 2a sqrt(U0)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="write to this file instead of stdout")
    common.add_argument("--precision", type=int, default=15, help="significant digits (6-17)")

    parser = argparse.ArgumentParser(prog="smx", description="S-matrix of the exponential potential")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("bound-states", parents=[common], help="bound-state table")
    h = sub.add_parser("heisenberg", parents=[common], help="R_H per bound state")
    h.add_argument("--method", choices=("residue", "contour", "both"), default="residue")
    f = sub.add_parser("figure1", parents=[common], help="kappa branches and R_H over an alpha sweep")
    f.add_argument("--alpha-min", type=float, default=0.5)
    f.add_argument("--alpha-max", type=float, default=15.0)
    f.add_argument("--steps", type=int, default=291)
    s = sub.add_parser("s-eval", parents=[common], help="S and the Jost functions at one k")
    s.add_argument("--k-re", type=float, required=True)
    s.add_argument("--k-im", type=float, default=0.0)
    r = sub.add_parser("redundant", parents=[common], help="redundant-pole residues and their sum")
    r.add_argument("--n-max", type=int, default=5)
    r.add_argument("--r-sum", type=float, default=1.0, help="r + r' in the redundant-pole sum")
    r.add_argument("--terms", type=int, default=50)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on unknown flags
    try:
        cfg = RunConfig(a=args.a, alpha=args.alpha, output_format=args.format,
                        output_path=args.out, precision_digits=args.precision)
        table = COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print(f"smx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PoleProximity, PoleOnContour, SingularAtRedundantZeroPoint,
            PoleAtNonPositiveInteger) as exc:
        print(f"smx: singular: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except SmxError as exc:
        print(f"smx: {exc}", file=sys.stderr)
        return 1

    params = {"command": args.command, "a": cfg.a, "alpha": cfg.alpha}
    for name in ("method", "alpha_min", "alpha_max", "steps", "k_re", "k_im", "n_max", "r_sum", "terms"):
        if hasattr(args, name):
            params[name] = getattr(args, name)
    text = render(cfg, table, params)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
