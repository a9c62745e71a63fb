"""Command-line interface.

Subcommands: eval, scan, identities, det, maximize, certify.  Results go to
stdout (CSV or human-readable per --format); messages to stderr.  Exit codes:
0 success, 1 any failed check or certificate, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from .certify import (
    certify_conclusion,
    certify_constants,
    certify_polynomials,
    certify_series_bounds,
    quartic_negativity_reaches_cutoff,
)
from .errors import BadInterval, QuadratureFailure, TorusDetError, UnknownCurve
from .eta import determinant, eta_imag_axis, maximize_determinant, psi1
from .identities import IdentityKind, check_identity
from .scans import GridSpec, log_grid, parse_grid, scan_to_csv
from .spectral import zeta_det
from .theta import theta_series
from .types import ThetaKind, TruncationPolicy

_EVAL_FNS = {
    "theta2": lambda x, p: theta_series(ThetaKind.THETA2, x, p),
    "theta3": lambda x, p: theta_series(ThetaKind.THETA3, x, p),
    "theta4": lambda x, p: theta_series(ThetaKind.THETA4, x, p),
    "theta1p": lambda x, p: theta_series(ThetaKind.THETA1_PLUS, x, p),
    "eta": lambda x, p: eta_imag_axis(x, p),
    "psi1": lambda x, p: psi1(x, p),
}


@dataclass(frozen=True)
class Command:
    """Parsed invocation: one subcommand plus its validated flag set."""

    subcommand: str
    options: dict = field(default_factory=dict)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torusdet",
        description="theta/eta evaluation and rectangular-torus determinants",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("eval", help="evaluate one function at one point")
    p.add_argument("--fn", required=True, choices=sorted(_EVAL_FNS))
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--format", choices=("csv", "human"), default="human")

    p = sub.add_parser("scan", help="scan a named curve over a grid")
    p.add_argument("--fn", required=True)
    p.add_argument("--grid", default="0.05:20:200:log", help="lo:hi:n[:log|lin]")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--format", choices=("csv", "human"), default="csv")

    p = sub.add_parser("identities", help="check all identities on a grid")
    p.add_argument("--grid", default="0.05:20:200:log", help="lo:hi:n[:log|lin]")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--format", choices=("csv", "human"), default="human")

    p = sub.add_parser("det", help="determinant of the torus Laplacian")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--route", choices=("eta", "zeta", "all"), default="eta")
    p.add_argument("--tol", type=float, default=1e-6,
                   help="absolute tolerance for the zeta route")
    p.add_argument("--format", choices=("csv", "human"), default="human")

    p = sub.add_parser("maximize", help="locate the extremal torus parameter")
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--format", choices=("csv", "human"), default="human")

    p = sub.add_parser("certify", help="run every proof certificate")
    p.add_argument("--format", choices=("csv", "human"), default="human")
    return parser


def _cmd_eval(opt: dict) -> int:
    policy = TruncationPolicy(opt["tol"], 1_000_000)
    b = _EVAL_FNS[opt["fn"]](opt["x"], policy)
    if opt["format"] == "csv":
        print("value,error_bound,terms_used")
        print(f"{b.value!r},{b.error_bound!r},{b.terms_used}")
    else:
        print(f"{opt['fn']}({opt['x']:g}) = {b.value!r} +/- {b.error_bound:.3g} "
              f"({b.terms_used} terms)")
    return 0


def _cmd_scan(opt: dict) -> int:
    grid = parse_grid(opt["grid"])
    policy = TruncationPolicy(opt["tol"], 1_000_000)
    table = scan_to_csv(opt["fn"], grid, policy)
    if opt["format"] == "csv":
        sys.stdout.write(table.to_csv())
    else:
        print("  ".join(table.header))
        for row in table.rows:
            print("  ".join(repr(v) for v in row))
    return 0


def _cmd_identities(opt: dict) -> int:
    grid = parse_grid(opt["grid"])
    policy = TruncationPolicy(opt["tol"], 1_000_000)
    xs = grid.points()
    failed = 0
    if opt["format"] == "csv":
        print("identity,x,lhs,rhs,residual,allowed,passed")
    for kind in IdentityKind:
        worst = None
        for x in xs:
            rep = check_identity(kind, x, policy)
            if not rep.passed:
                failed += 1
            if opt["format"] == "csv":
                print(f"{kind.value},{x!r},{rep.lhs!r},{rep.rhs!r},"
                      f"{rep.residual!r},{rep.allowed!r},{int(rep.passed)}")
            if worst is None or rep.residual - rep.allowed > worst.residual - worst.allowed:
                worst = rep
        if opt["format"] == "human":
            print(f"{kind.value:28s} worst residual {worst.residual:.3e} "
                  f"(allowed {worst.allowed:.3e}) at x={worst.x:.4g}  "
                  f"{'PASS' if worst.passed else 'FAIL'}")
    return 1 if failed else 0


def _cmd_det(opt: dict) -> int:
    alpha = opt["alpha"]
    route = opt["route"]
    results = []
    if route in ("eta", "all"):
        results.append(determinant(alpha))
    if route in ("zeta", "all"):
        results.append(zeta_det(alpha, quad_tol=opt["tol"]))
    if opt["format"] == "csv":
        print("route,alpha,det,height")
        for r in results:
            print(f"{r.route.value},{r.alpha!r},{r.det_value!r},{r.height!r}")
    else:
        for r in results:
            print(f"det'(alpha={alpha:g}) [{r.route.value} route] = {r.det_value!r}"
                  f"   height = {r.height!r}")
    if len(results) == 2:
        gap = abs(results[0].det_value - results[1].det_value)
        allowed = 2.0 * opt["tol"]
        if gap > allowed:
            print(f"route disagreement {gap:g} exceeds {allowed:g}", file=sys.stderr)
            return 1
    return 0


def _cmd_maximize(opt: dict) -> int:
    argmax, value = maximize_determinant((opt["lo"], opt["hi"]), opt["tol"])
    if opt["format"] == "csv":
        print("argmax,det")
        print(f"{argmax!r},{value!r}")
    else:
        print(f"argmax = {argmax:.10f}   det' = {value!r}")
    return 0


def _cmd_certify(opt: dict) -> int:
    certs = list(certify_constants())
    certs += certify_series_bounds(log_grid(1.001, 50.0, 512))
    certs += certify_polynomials()
    certs.append(
        certify_conclusion(
            [0.05, 0.2, 0.5, 0.9, 0.99],
            [1.01, 1.1, 1.2, 2.0, 5.0, 20.0],
        )
    )
    sensitivity_ok = quartic_negativity_reaches_cutoff(183.0) and not (
        quartic_negativity_reaches_cutoff(184.0)
    )
    failed = [c for c in certs if not c.passed]
    if opt["format"] == "csv":
        print("name,domain,grid_points,min_margin,passed")
        for c in certs:
            print(f"{c.name},{c.domain},{c.grid_points},{c.min_margin!r},{int(c.passed)}")
        print(f"sensitivity_183_vs_184,constant,2,nan,{int(sensitivity_ok)}")
    else:
        for c in certs:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.name:24s} "
                  f"margin {c.min_margin:.3e}  [{c.claim}]")
        print(f"{'PASS' if sensitivity_ok else 'FAIL'}  "
              f"{'sensitivity_183_vs_184':24s} "
              f"[184 in place of 183 breaks the interval handover]")
    return 1 if failed or not sensitivity_ok else 0


_HANDLERS = {
    "eval": _cmd_eval,
    "scan": _cmd_scan,
    "identities": _cmd_identities,
    "det": _cmd_det,
    "maximize": _cmd_maximize,
    "certify": _cmd_certify,
}


def run(argv: list[str]) -> int:
    """Parse argv and dispatch; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cmd = Command(subcommand=args.subcommand, options=vars(args))
    try:
        return _HANDLERS[cmd.subcommand](cmd.options)
    except QuadratureFailure as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (UnknownCurve, BadInterval, ValueError, TorusDetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
