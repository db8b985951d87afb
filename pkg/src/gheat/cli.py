"""Command-line front end.

Subcommands
    boundary   solve the free-boundary constants for one sigma or a scan
    eval       tabulate u(t, x) with profile derivatives and ODE residual
    moment     the odd sublinear moment k_n * t^(n+1/2)
    finance    worst-case log-price moment for the uncertain-volatility model
    verify     self-verification suites (exact identities, tail bounds,
               finite-difference and Monte Carlo cross-validation)

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
failure (bracketing/convergence).  Outputs are JSON (schema_version and
echoed inputs included) or CSV with 17-significant-digit floats.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict

import numpy as np

from . import __version__
from .backend import default_backend_name
from .boundary import (
    BracketError,
    ConvergenceError,
    boundary_scan,
    solve_free_boundary,
    solve_free_boundary_degenerate,
)
from .fd import FDGrid, NumericsError, error_vs_closed, export_rows, fd_solve
from .mc import McPolicy, mc_value
from .polys import left_asymptote, mills_bounds, pair_identities
from .profile import (
    eval_profile,
    eval_solution,
    finance_log_moment,
    odd_moment,
    ode_residual,
    profile_for,
)

SCHEMA_VERSION = 1


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _out_path(path: str | None) -> str | None:
    if path is None:
        return None
    out_dir = os.environ.get("GHEAT_OUTPUT_DIR")
    if out_dir and not os.path.isabs(path):
        return os.path.join(out_dir, path)
    return path


def _emit(text: str, path: str | None) -> None:
    path = _out_path(path)
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _json_doc(command: str, inputs: dict, results) -> str:
    return json.dumps(
        {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "inputs": inputs,
            "results": results,
        },
        indent=2,
        sort_keys=True,
    )


def _csv_table(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _fb_record(fb) -> dict:
    rec = asdict(fb)
    return rec


def cmd_boundary(args, parser) -> int:
    inputs = {"n": args.n, "sigma": args.sigma, "scan": args.scan, "tol": args.tol}
    if (args.sigma is None) == (args.scan is None):
        parser.error("boundary: provide exactly one of --sigma or --scan")
    if args.scan is not None:
        sigmas = [float(s) for s in args.scan.split(",") if s.strip()]
        records = [_fb_record(fb) for fb in boundary_scan(args.n, sigmas, tol=args.tol)]
    else:
        s = args.sigma
        if not (0.0 <= s < 1.0):
            parser.error("boundary: sigma must lie in [0, 1)")
        fb = (
            solve_free_boundary_degenerate(args.n, tol=args.tol)
            if s == 0.0
            else solve_free_boundary(args.n, s, tol=args.tol)
        )
        records = [_fb_record(fb)]
    if args.format == "csv":
        header = list(records[0].keys())
        text = _csv_table(header, ([r[k] for k in header] for r in records))
    else:
        text = _json_doc("boundary", inputs, records)
    _emit(text, args.output)
    return 0


def cmd_eval(args, parser) -> int:
    if not (0.0 <= args.sigma <= 1.0):
        parser.error("eval: sigma must lie in [0, 1]")
    if args.t < 0:
        parser.error("eval: t must be nonnegative")
    if args.points < 2:
        parser.error("eval: --points must be >= 2")
    n = args.n
    xs = np.linspace(args.x_min, args.x_max, args.points)
    p = profile_for(n, args.sigma)
    rows = []
    if args.t == 0.0:
        for x in xs:
            u = x ** (2 * n + 1)
            ux = (2 * n + 1) * x ** (2 * n)
            uxx = (2 * n + 1) * (2 * n) * x ** (2 * n - 1)
            rows.append((float(x), float(u), float(ux), float(uxx), 0.0))
    else:
        rt = math.sqrt(args.t)
        z = xs / rt
        u = eval_solution(n, args.sigma, args.t, xs, profile=p)
        ux = args.t**n * eval_profile(p, z, 1)
        uxx = args.t ** (n - 0.5) * eval_profile(p, z, 2)
        res = ode_residual(p, z) / (1.0 + np.abs(eval_profile(p, z, 0)))
        rows = list(zip(map(float, xs), map(float, u), map(float, ux),
                        map(float, uxx), map(float, res)))
    inputs = {
        "n": n, "sigma": args.sigma, "t": args.t,
        "x_min": args.x_min, "x_max": args.x_max, "points": args.points,
    }
    header = ["x", "u", "ux", "uxx", "ode_residual_scaled"]
    if args.format == "json":
        text = _json_doc("eval", inputs, [dict(zip(header, r)) for r in rows])
    else:
        text = _csv_table(header, rows)
    _emit(text, args.output)
    return 0


def cmd_moment(args, parser) -> int:
    if not (0.0 <= args.sigma <= 1.0):
        parser.error("moment: sigma must lie in [0, 1]")
    if args.t <= 0:
        parser.error("moment: t must be positive")
    value = odd_moment(args.n, args.sigma, args.t)
    inputs = {"n": args.n, "sigma": args.sigma, "t": args.t}
    if args.format == "csv":
        text = _csv_table(["n", "sigma", "t", "moment"],
                          [(args.n, float(args.sigma), float(args.t), value)])
    else:
        text = _json_doc("moment", inputs, {"moment": value})
    _emit(text, args.output)
    return 0


def cmd_finance(args, parser) -> int:
    if not (0.0 <= args.sigma <= 1.0):
        parser.error("finance: sigma must lie in [0, 1]")
    if args.T <= 0:
        parser.error("finance: T must be positive")
    value = finance_log_moment(args.m, args.sigma, args.mu, args.T)
    inputs = {"m": args.m, "sigma": args.sigma, "mu": args.mu, "T": args.T}
    if args.format == "csv":
        text = _csv_table(
            ["m", "sigma", "mu", "T", "value"],
            [(args.m, float(args.sigma), float(args.mu), float(args.T), value)],
        )
    else:
        text = _json_doc("finance", inputs, {"value": value})
    _emit(text, args.output)
    return 0


def _verify_identities(args) -> tuple[bool, dict]:
    checks = []
    for n in range(1, args.n + 1):
        rep = pair_identities(n)
        checks.append({"n": n, "cross": rep.cross, "wronskian": rep.wronskian})
    ok = all(c["cross"] and c["wronskian"] for c in checks)
    return ok, {"identities": checks}


def _verify_bounds(args) -> tuple[bool, dict]:
    xs = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0)
    failures = []
    for n in range(1, args.n + 1):
        for x in xs:
            b = mills_bounds(n, x)
            slack = 5e-14 * b.tail  # enclosure can be tighter than one ulp of tail
            ok = (
                b.lower <= b.tail + slack
                and b.tail <= b.upper + slack
                and b.tail - b.lower <= b.lower_gap_bound
                and b.upper - b.tail <= b.upper_gap_bound
            )
            if not ok:
                failures.append({"n": n, "x": x})
    asym = [
        {
            "n": n,
            "value": left_asymptote(n, -30.0),
            "target": float(math.factorial(2 * n - 1)),
        }
        for n in range(1, 5)
    ]
    return not failures, {"sandwich_failures": failures, "left_asymptote": asym}


def _verify_fd(args) -> tuple[bool, dict, str | None]:
    grid = FDGrid(x_min=-8.0, x_max=8.0, nx=args.nx, T=args.T, cfl=args.cfl)
    sol = fd_solve(args.m, args.sigma, grid)
    err = error_vs_closed(sol, args.m, args.sigma, -2.0, 2.0)
    ok = err <= args.tol
    csv_text = None
    if args.output:
        csv_text = _csv_table(
            ["x", "u_numeric", "u_closed", "error"],
            export_rows(sol, args.m, args.sigma),
        )
    return ok, {"max_error_on_[-2,2]": err, "tolerance": args.tol,
                "nx": args.nx, "steps": int(math.ceil(grid.T / grid.dt))}, csv_text


def _verify_mc(args) -> tuple[bool, dict]:
    n = args.n
    m = 2 * n + 1
    fb = (
        solve_free_boundary_degenerate(n)
        if args.sigma == 0.0
        else solve_free_boundary(n, args.sigma)
    )
    closed = odd_moment(n, args.sigma, args.T)
    est = mc_value(
        m, args.sigma, args.T, 0.0, McPolicy.feedback(fb),
        args.paths, args.steps, args.seed,
    )
    tol = max(3.0 * est.stderr, 0.01 * abs(closed))
    ok = abs(est.mean - closed) <= tol
    return ok, {
        "closed_form": closed,
        "mc_mean": est.mean,
        "mc_stderr": est.stderr,
        "tolerance": tol,
        "backend": default_backend_name(),
    }


def cmd_verify(args, parser) -> int:
    chosen = [k for k in ("identities", "bounds", "fd", "mc") if getattr(args, k)]
    if len(chosen) != 1:
        parser.error("verify: choose exactly one of --identities/--bounds/--fd/--mc")
    kind = chosen[0]
    inputs = {
        k: v for k, v in vars(args).items()
        if k not in ("func", "output", "format") and v is not None
    }
    csv_text = None
    if kind == "identities":
        ok, details = _verify_identities(args)
    elif kind == "bounds":
        ok, details = _verify_bounds(args)
    elif kind == "fd":
        ok, details, csv_text = _verify_fd(args)
    else:
        ok, details = _verify_mc(args)
    doc = _json_doc(f"verify --{kind}", inputs, {"pass": ok, "details": details})
    if csv_text is not None:
        _emit(csv_text, args.output)
        sys.stdout.write(doc + "\n")
    else:
        _emit(doc, args.output)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gheat",
        description="Explicit G-heat (Barenblatt) equation solutions and checks",
    )
    parser.add_argument("--version", action="version", version=f"gheat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("-o", "--output", help="write result to this file")
        p.add_argument("--format", choices=("json", "csv"), default=None)

    b = sub.add_parser("boundary", help="free-boundary constants")
    b.add_argument("-n", type=int, required=True)
    b.add_argument("--sigma", type=float)
    b.add_argument("--scan", help="comma-separated ascending sigmas in (0,1)")
    b.add_argument("--tol", type=float, default=1e-12)
    add_common(b)
    b.set_defaults(func=cmd_boundary, format_default="json")

    e = sub.add_parser("eval", help="tabulate u(t,x) and derivatives")
    e.add_argument("-n", type=int, required=True)
    e.add_argument("--sigma", type=float, required=True)
    e.add_argument("-t", type=float, required=True)
    e.add_argument("--x-min", type=float, default=-8.0)
    e.add_argument("--x-max", type=float, default=8.0)
    e.add_argument("--points", type=int, default=401)
    add_common(e)
    e.set_defaults(func=cmd_eval, format_default="csv")

    mo = sub.add_parser("moment", help="odd sublinear moment")
    mo.add_argument("-n", type=int, required=True)
    mo.add_argument("--sigma", type=float, required=True)
    mo.add_argument("-t", type=float, required=True)
    add_common(mo)
    mo.set_defaults(func=cmd_moment, format_default="json")

    f = sub.add_parser("finance", help="worst-case log-price moment")
    f.add_argument("-m", type=int, required=True)
    f.add_argument("--sigma", type=float, default=0.0)
    f.add_argument("--mu", type=float, default=0.0)
    f.add_argument("-T", type=float, required=True)
    add_common(f)
    f.set_defaults(func=cmd_finance, format_default="json")

    v = sub.add_parser("verify", help="verification suites")
    v.add_argument("--identities", action="store_true")
    v.add_argument("--bounds", action="store_true")
    v.add_argument("--fd", action="store_true")
    v.add_argument("--mc", action="store_true")
    v.add_argument("-n", type=int, default=8)
    v.add_argument("-m", type=int, default=3)
    v.add_argument("--sigma", type=float, default=0.5)
    v.add_argument("--paths", type=int, default=200_000)
    v.add_argument("--steps", type=int, default=400)
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--nx", type=int, default=800)
    v.add_argument("--cfl", type=float, default=0.25)
    v.add_argument("-T", type=float, default=1.0)
    v.add_argument("--tol", type=float, default=5e-3)
    add_common(v)
    v.set_defaults(func=cmd_verify, format_default="json")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = getattr(args, "format_default", "json")
    try:
        return args.func(args, parser)
    except (BracketError, ConvergenceError, NumericsError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        parser.exit(2, f"usage error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
