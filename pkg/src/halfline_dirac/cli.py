"""Command-line surface: certify, supscan, delta, nonrel, kernel.

Outputs are CSV (with a header row) or a single JSON object carrying
schema_version "1".  Identical invocations produce byte-identical output.
Exit codes: 0 success / all verdicts pass, 1 certified failure or marginal
verdict or bound violation, 2 usage or input error.
"""

from __future__ import annotations

import os
import sys

# Thread pinning must precede the first numpy import; --threads N > 1 opts
# into BLAS parallelism, whose reductions are not bit-reproducible across
# different thread counts.
def _pin_threads(argv):
    n = "1"
    for i, arg in enumerate(argv):
        if arg == "--threads" and i + 1 < len(argv):
            n = argv[i + 1]
        elif arg.startswith("--threads="):
            n = arg.split("=", 1)[1]
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(var, n)


_pin_threads(sys.argv)

import argparse
import json
import math

import numpy as np

from .bounds import ENTRY11, FULL, ScanGrid, scan_verify
from .certify import certificate_alt, certificate_c, certificate_nonrel, certificate_sufcon
from .core import SpectralEdgeError, SpectralParams
from .delta import eigen_curve, interface_residual, solve_eigenvalue, t_star, t_zero
from .kernels import CParams, halfline_kernel_c, halfline_kernel_eval, robin_kernels
from .nonrel import beta_of, certificate_limit_table, convergence_table
from .potentials import GaussianBump11, default_grid_for, load_csv

SCHEMA_VERSION = "1"


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    if isinstance(v, int):
        return str(v)
    return str(v)


def _emit(text: str, output):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _params_from(args) -> SpectralParams:
    if args.cot_alpha is not None:
        return SpectralParams.from_cot(m=args.m, cot_alpha=args.cot_alpha)
    return SpectralParams(m=args.m, alpha=args.alpha)


def _add_angle_flags(p, m_required=True):
    p.add_argument("--m", type=float, required=m_required, help="mass (natural units)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--alpha", type=float, help="boundary angle in radians, in (0, pi/2)")
    group.add_argument("--cot-alpha", dest="cot_alpha", type=float,
                       help="cot of the boundary angle, > 0")


def _add_common_flags(p):
    p.add_argument("--output", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--threads", type=int, default=1,
                   help="BLAS threads (>1 is not bit-reproducible)")


def _potential_from(args):
    if args.potential:
        return load_csv(args.potential)
    if args.family == "gaussian":
        missing = [n for n in ("t", "a", "sigma") if getattr(args, n) is None]
        if missing:
            raise ValueError(f"--family gaussian requires --{' --'.join(missing)}")
        return GaussianBump11(t=args.t, a=args.a, sigma=args.sigma)
    raise ValueError("provide a potential via --potential FILE or --family gaussian")


def _run_certify(args) -> int:
    params = _params_from(args)
    V = _potential_from(args)
    grid = default_grid_for(V, panels=args.panels, order=args.order, x_max=args.x_max)
    certs = [certificate_sufcon(V, params, grid)]
    if V.is_entry11_only():
        certs.append(certificate_alt(V, params, grid))
    if args.nonrel:
        beta = args.beta if args.beta is not None else beta_of(params)
        certs.append(certificate_nonrel(V, params.m, beta, grid))
    if args.c is not None:
        certs.append(certificate_c(V, params, args.c, grid))

    header = ["condition", "value", "verdict", "marginal", "quad_error", "beta", "c"]
    rows = []
    for ct in certs:
        rows.append(
            [
                ct.condition_id,
                ct.value,
                ct.verdict,
                ct.marginal,
                ct.quad_error_estimate,
                "" if ct.beta is None else _fmt(ct.beta),
                "" if ct.c is None else _fmt(ct.c),
            ]
        )
    if args.format == "json":
        obj = {
            "schema_version": SCHEMA_VERSION,
            "certificates": [
                {
                    "condition": ct.condition_id,
                    "value": ct.value,
                    "verdict": ct.verdict,
                    "marginal": ct.marginal,
                    "quad_error": ct.quad_error_estimate,
                    "beta": ct.beta,
                    "c": ct.c,
                }
                for ct in certs
            ],
        }
        _emit(_json(obj), args.output)
    else:
        _emit(_csv(header, rows), args.output)
    ok = all(ct.verdict and not ct.marginal for ct in certs)
    return 0 if ok else 1


def _run_supscan(args) -> int:
    params = _params_from(args)
    zgrid = ScanGrid(
        re_max=args.re_max,
        im_max=args.im_max,
        n_re=args.n,
        n_im=args.n,
        spectrum_n=args.spectrum_n,
        eps_spectrum=args.eps_spectrum,
        edge_exclusion=args.edge_exclusion,
    )
    report = scan_verify(args.x, args.y, params, zgrid,
                         which=ENTRY11 if args.entry11 else FULL)
    if args.format == "json":
        obj = {
            "schema_version": SCHEMA_VERSION,
            "which": report.which,
            "bound": report.bound,
            "max_found": report.max_found,
            "witness_re": report.witness_z.real,
            "witness_im": report.witness_z.imag,
            "margin": report.margin,
            "n_samples": report.n_samples,
            "violation": report.violation,
        }
        _emit(_json(obj), args.output)
    else:
        header = ["which", "bound", "max_found", "witness_re", "witness_im",
                  "margin", "n_samples", "violation"]
        row = [report.which, report.bound, report.max_found, report.witness_z.real,
               report.witness_z.imag, report.margin, report.n_samples, report.violation]
        _emit(_csv(header, [row]), args.output)
    return 1 if report.violation else 0


def _run_delta(args) -> int:
    params = _params_from(args)
    m, a = args.m, args.a
    t0 = t_zero(m, a, params)
    ts = t_star(m, a, params)
    if args.scan is not None:
        tmin, tmax, n = args.scan
        rows = eigen_curve(tmin, tmax, int(n), m, a, params)
        if args.format == "json":
            obj = {
                "schema_version": SCHEMA_VERSION,
                "t0": t0,
                "t_star": ts,
                "curve": [{"t": float(t), "lambda": float(l)} for t, l in rows],
            }
            _emit(_json(obj), args.output)
        else:
            _emit(_csv(["t", "lambda"], [[float(t), float(l)] for t, l in rows]),
                  args.output)
        return 0
    res = solve_eigenvalue(args.t, m, a, params)
    if args.format == "json":
        obj = {
            "schema_version": SCHEMA_VERSION,
            "t": args.t,
            "t0": t0,
            "t_star": ts,
            "bound_state": res is not None,
        }
        if res is not None:
            obj["lambda"] = res.lam
            obj["residual"] = res.residual
            obj["interface_residual"] = interface_residual(res.lam, args.t, m, a, params)
        _emit(_json(obj), args.output)
    else:
        header = ["t", "lambda", "residual", "t0", "t_star", "bound_state"]
        if res is None:
            row = [args.t, "", "", t0, ts, False]
        else:
            row = [args.t, res.lam, res.residual, t0, ts, True]
        _emit(_csv(header, [row]), args.output)
    return 0


def _run_nonrel(args) -> int:
    params = _params_from(args)
    z = complex(args.z_re, args.z_im)
    c_list = [float(s) for s in args.c_list.split(",") if s.strip()]
    if not c_list:
        raise ValueError("--c-list must contain at least one value")
    rows = convergence_table(c_list, z, params, X=args.X)
    beta = beta_of(params)

    potential = None
    if args.potential or args.family:
        potential = _potential_from(args)
    header = ["c", "eta_gap", "boundary_hs", "full_hs"]
    table = [[r.c, r.eta_gap, r.boundary_hs, r.full_hs] for r in rows]
    if potential is not None:
        grid = default_grid_for(potential, panels=args.panels, order=args.order)
        cert_rows = certificate_limit_table(potential, params, c_list, grid)
        header += ["cert_c", "cert_nonrel", "rel_gap"]
        for row, cr in zip(table, cert_rows):
            row += [cr.cert_c, cr.cert_nonrel, cr.rel_gap]
    header.append("beta")
    for row in table:
        row.append(beta)
    if args.format == "json":
        obj = {
            "schema_version": SCHEMA_VERSION,
            "beta": beta,
            "rows": [dict(zip(header[:-1], row[:-1])) for row in table],
        }
        _emit(_json(obj), args.output)
    else:
        _emit(_csv(header, table), args.output)
    return 0


def _run_kernel(args) -> int:
    params = _params_from(args)
    z = complex(args.z_re, args.z_im)
    if args.robin:
        G, G_alpha, xi = robin_kernels(args.x, args.y, z, args.m, params)
        obj = {
            "schema_version": SCHEMA_VERSION,
            "kind": "robin",
            "G_re": G.real,
            "G_im": G.imag,
            "G_alpha_re": G_alpha.real,
            "G_alpha_im": G_alpha.imag,
            "xi_re": xi.real,
            "xi_im": xi.imag,
        }
        _emit(_json(obj), args.output)
        return 0
    if args.c is not None:
        value = halfline_kernel_c(args.x, args.y, z, CParams(c=args.c, base=params))
        branch = "xgey" if args.x >= args.y else "xlty"
        kind = "dirac_c"
    else:
        ev = halfline_kernel_eval(args.x, args.y, z, params)
        value, branch, kind = ev.value, ev.branch.value, "dirac"
    obj = {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "branch": branch,
        "op_norm": value.norm,
    }
    for name in ("a11", "a12", "a21", "a22"):
        entry = getattr(value, name)
        obj[f"{name}_re"] = entry.real
        obj[f"{name}_im"] = entry.imag
    _emit(_json(obj), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hdirac",
        description="Half-line Dirac resolvent bounds, stability certificates, "
                    "bound states and the non-relativistic limit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="evaluate stability certificates for a potential")
    _add_angle_flags(p)
    p.add_argument("--potential", default=None, help="CSV file with a sampled potential")
    p.add_argument("--family", choices=["gaussian"], default=None)
    p.add_argument("--t", type=float, default=None, help="gaussian weight (total mass)")
    p.add_argument("--a", type=float, default=None, help="gaussian center")
    p.add_argument("--sigma", type=float, default=None, help="gaussian width")
    p.add_argument("--beta", type=float, default=None,
                   help="Robin coupling for the non-relativistic certificate")
    p.add_argument("--nonrel", action="store_true",
                   help="also evaluate the non-relativistic certificate")
    p.add_argument("--c", type=float, default=None,
                   help="also evaluate the c-dependent certificate")
    p.add_argument("--panels", type=int, default=64)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--x-max", dest="x_max", type=float, default=None)
    _add_common_flags(p)
    p.set_defaults(func=_run_certify)

    p = sub.add_parser("supscan", help="verify the sharp kernel bound by scanning z")
    _add_angle_flags(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--re-max", dest="re_max", type=float, default=40.0)
    p.add_argument("--im-max", dest="im_max", type=float, default=40.0)
    p.add_argument("--n", type=int, default=200, help="rectangle points per axis")
    p.add_argument("--entry11", action="store_true", help="scan the (1,1) entry instead")
    p.add_argument("--spectrum-n", dest="spectrum_n", type=int, default=1000)
    p.add_argument("--eps-spectrum", dest="eps_spectrum", type=float, default=1e-6)
    p.add_argument("--edge-exclusion", dest="edge_exclusion", type=float, default=1e-3)
    _add_common_flags(p)
    p.set_defaults(func=_run_supscan)

    p = sub.add_parser("delta", help="point-interaction bound states")
    _add_angle_flags(p)
    p.add_argument("--a", type=float, required=True, help="interaction position > 0")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--t", type=float, help="coupling strength")
    group.add_argument("--scan", nargs=3, type=float, metavar=("TMIN", "TMAX", "N"),
                       help="uniform coupling scan")
    _add_common_flags(p)
    p.set_defaults(func=_run_delta)

    p = sub.add_parser("nonrel", help="non-relativistic convergence tables")
    _add_angle_flags(p)
    p.add_argument("--z-re", dest="z_re", type=float, required=True)
    p.add_argument("--z-im", dest="z_im", type=float, default=0.0)
    p.add_argument("--c-list", dest="c_list", required=True,
                   help="comma-separated speeds of light")
    p.add_argument("--X", type=float, default=20.0, help="truncation length")
    p.add_argument("--potential", default=None)
    p.add_argument("--family", choices=["gaussian"], default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--panels", type=int, default=64)
    p.add_argument("--order", type=int, default=8)
    _add_common_flags(p)
    p.set_defaults(func=_run_nonrel)

    p = sub.add_parser("kernel", help="dump one kernel evaluation as JSON")
    _add_angle_flags(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--z-re", dest="z_re", type=float, required=True)
    p.add_argument("--z-im", dest="z_im", type=float, default=0.0)
    p.add_argument("--c", type=float, default=None, help="speed of light variant")
    p.add_argument("--robin", action="store_true", help="Robin Laplacian kernel instead")
    _add_common_flags(p)
    p.set_defaults(func=_run_kernel)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, SpectralEdgeError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
