"""Command-line front end: JSON certificates, JSON reports, plot-ready CSV.

Subcommands
-----------
root     certified enclosure of the positive quartic root
certify  sign certificate for one of the registered claims
report   full verification report for a bundled metric (JSON)
scan     per-point curvature table (CSV)
chi      Gauss-Bonnet Euler characteristic

Exit codes: 0 all embedded checks pass; 1 a check failed or a certificate was
inconclusive; 2 bad arguments or unwritable output path.  Output is
deterministic: identical invocations produce byte-identical JSON (no
timestamps).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from ._backend import backend_name
from .analysis import (
    CLAIMS,
    einstein_scan,
    gauss_bonnet_chi,
    scan,
    SCAN_COLUMNS,
)
from .curvature import FRAME_BRACKET_C, STRUCTURE_LAMBDA
from .metrics import ORBIT_VOLUME, PageParams, bundled_metric, find_root_a

METRIC_CHOICES = ("page", "s4", "cp2-fs")

#: Expected values and pass thresholds for the embedded report checks.
EXPECTATIONS = {
    "page": {
        "chi": 4.0,
        "chi_tol": 0.02,  # 0.5 % of 4
        "einstein_tol": 1e-8,
        "weyl_degenerate": True,
        "claims": ("fprime-positive", "k01-negative"),
    },
    "s4": {
        "chi": 2.0,
        "chi_tol": 1e-6,
        "einstein_tol": 1e-10,
        "einstein_constant": 3.0,
        "weyl_degenerate": False,
        "claims": (),
    },
    "cp2-fs": {
        "chi": 3.0,
        "chi_tol": 1e-4,
        "einstein_tol": 1e-8,
        "einstein_constant": 6.0,
        "weyl_degenerate": True,
        "claims": (),
    },
}

#: Measured engine/closed-form ratio for k01 (constant across the domain).
K01_ENGINE_OVER_CLOSED_FORM = 0.5


def _convention_block() -> dict:
    return {
        "structure_lambda": STRUCTURE_LAMBDA,
        "frame_bracket_c": FRAME_BRACKET_C,
        "orbit_volume": ORBIT_VOLUME,
        "two_form_basis": "e0^e1, e0^e2, e0^e3, e2^e3, e3^e1, e1^e2",
        "sign_convention": "sectional curvature of the unit round sphere is +1",
        "k01_engine_over_closed_form": K01_ENGINE_OVER_CLOSED_FORM,
    }


def _interval_block(iv) -> dict:
    return {"lo": iv.lo, "hi": iv.hi}


def _certificate_block(name: str, cert) -> dict:
    return {
        "claim": name,
        "quantity": cert.quantity,
        "window": _interval_block(cert.window),
        "bound": _interval_block(cert.bound),
        "verdict": cert.verdict.value,
    }


def _emit_json(obj: dict, out_path: str | None, to_stdout: bool) -> int:
    text = json.dumps(obj, indent=2) + "\n"
    if out_path:
        try:
            with open(out_path, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {out_path}: {exc}", file=sys.stderr)
            return 2
    if to_stdout or not out_path:
        sys.stdout.write(text)
    return 0


def cmd_root(args) -> int:
    enclosure = find_root_a(args.tol)
    obj = {
        "quantity": "positive root of x^4 + 4x^3 - 6x^2 + 12x - 3",
        "tol": args.tol,
        "lo": enclosure.lo,
        "hi": enclosure.hi,
        "width": enclosure.width,
        "midpoint": enclosure.mid,
        "sign_at_lo": "negative",
        "sign_at_hi": "positive",
    }
    rc = _emit_json(obj, args.out, args.json)
    if rc:
        return rc
    ok = enclosure.width <= args.tol and 0.0 < enclosure.lo and enclosure.hi < 1.0
    return 0 if ok else 1


def cmd_certify(args) -> int:
    builder, expected = CLAIMS[args.claim]
    params = PageParams.certified(args.tol)
    cert = builder(params)
    obj = _certificate_block(args.claim, cert)
    rc = _emit_json(obj, args.out, args.json)
    if rc:
        return rc
    return 0 if cert.verdict is expected else 1


def cmd_chi(args) -> int:
    metric = bundled_metric(args.metric)
    result = gauss_bonnet_chi(metric, args.quad_tol)
    expect = EXPECTATIONS[args.metric]
    obj = {
        "metric": args.metric,
        "chi": result.chi,
        "quad_error_estimate": result.quad_error_estimate,
        "samples": result.samples,
        "converged": result.converged,
        "expected": expect["chi"],
    }
    rc = _emit_json(obj, args.out, args.json)
    if rc:
        return rc
    ok = result.converged and abs(result.chi - expect["chi"]) <= expect["chi_tol"]
    return 0 if ok else 1


def build_report(metric_name: str, samples: int, quad_tol: float) -> dict:
    """Assemble the full verification report for one bundled metric."""
    expect = EXPECTATIONS[metric_name]
    params = PageParams.certified() if metric_name == "page" else None
    metric = bundled_metric(metric_name, params)
    checks: dict[str, bool] = {}

    parameters = None
    if params is not None:
        parameters = {
            "a": params.a,
            "a_enclosure": _interval_block(params.a_enclosure),
            "A": params.A,
            "D": params.D,
        }

    einstein = einstein_scan(metric, grid=samples)
    checks["einstein_residual"] = einstein.max_residual < expect["einstein_tol"]
    if "einstein_constant" in expect:
        checks["einstein_constant"] = (
            abs(einstein.constant - expect["einstein_constant"]) < 1e-8
        )

    gb = gauss_bonnet_chi(metric, quad_tol)
    checks["chi"] = gb.converged and abs(gb.chi - expect["chi"]) <= expect["chi_tol"]

    table = scan(metric, grid=samples, starts=8)
    degenerate = 0
    max_gap_rel = 0.0
    max_trace = 0.0
    for row in range(len(table)):
        mu = table.weyl_plus[row]
        diam = float(mu[2] - mu[0])
        trace = abs(float(mu.sum()))
        max_trace = max(max_trace, trace)
        if diam > 0.0:
            gap = min(float(mu[1] - mu[0]), float(mu[2] - mu[1]))
            rel = gap / diam
            if rel <= 1e-8:
                degenerate += 1
            max_gap_rel = max(max_gap_rel, rel)
    weyl = {
        "rows": len(table),
        "degenerate_rows": degenerate,
        "max_pair_gap_rel": max_gap_rel,
        "max_trace_abs": max_trace,
    }
    if expect["weyl_degenerate"]:
        checks["weyl_two_eigenvalues"] = degenerate == len(table)
    checks["weyl_traceless"] = max_trace < 1e-10

    certificates = []
    if params is not None:
        for claim in expect["claims"]:
            builder, expected_verdict = CLAIMS[claim]
            cert = builder(params)
            certificates.append(_certificate_block(claim, cert))
            checks[f"claim:{claim}"] = cert.verdict is expected_verdict

    return {
        "metric": metric_name,
        "tool": {"name": "pagecert", "version": __version__, "backend": backend_name()},
        "convention": _convention_block(),
        "parameters": parameters,
        "einstein": {
            "constant": einstein.constant,
            "max_residual": einstein.max_residual,
            "grid": samples,
        },
        "chi": {
            "value": gb.chi,
            "quad_error_estimate": gb.quad_error_estimate,
            "samples": gb.samples,
            "converged": gb.converged,
            "expected": expect["chi"],
        },
        "weyl_plus": weyl,
        "certificates": certificates,
        "checks": checks,
        "passed": all(checks.values()),
    }


def cmd_report(args) -> int:
    report = build_report(args.metric, args.samples, args.quad_tol)
    rc = _emit_json(report, args.out, args.json)
    if rc:
        return rc
    return 0 if report["passed"] else 1


def cmd_scan(args) -> int:
    metric = bundled_metric(args.metric)
    table = scan(metric, grid=args.grid)
    lines = [",".join(SCAN_COLUMNS)]
    for row in table.iter_rows():
        lines.append(",".join(format(v, ".17g") for v in row))
    text = "\n".join(lines) + "\n"
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pagecert",
        description="Certified curvature checks for the Page metric and its oracles.",
    )
    parser.add_argument("--version", action="version", version=f"pagecert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_root = sub.add_parser("root", help="certified enclosure of the quartic root")
    p_root.add_argument("--tol", type=float, default=1e-14)
    p_root.add_argument("--out", default=None)
    p_root.add_argument("--json", action="store_true")
    p_root.set_defaults(func=cmd_root)

    p_cert = sub.add_parser("certify", help="interval sign certificate for a claim")
    p_cert.add_argument("--claim", choices=sorted(CLAIMS), required=True)
    p_cert.add_argument("--tol", type=float, default=1e-14,
                        help="tolerance for the root enclosure behind the claim")
    p_cert.add_argument("--out", default=None)
    p_cert.add_argument("--json", action="store_true")
    p_cert.set_defaults(func=cmd_certify)

    p_rep = sub.add_parser("report", help="full verification report (JSON)")
    p_rep.add_argument("--metric", choices=METRIC_CHOICES, required=True)
    p_rep.add_argument("--samples", type=int, default=201)
    p_rep.add_argument("--quad-tol", type=float, default=1e-9)
    p_rep.add_argument("--out", default=None)
    p_rep.add_argument("--json", action="store_true")
    p_rep.set_defaults(func=cmd_report)

    p_scan = sub.add_parser("scan", help="curvature table (CSV)")
    p_scan.add_argument("--metric", choices=METRIC_CHOICES, required=True)
    p_scan.add_argument("--grid", type=int, default=401)
    p_scan.add_argument("--out", default=None)
    p_scan.set_defaults(func=cmd_scan)

    p_chi = sub.add_parser("chi", help="Gauss-Bonnet Euler characteristic")
    p_chi.add_argument("--metric", choices=METRIC_CHOICES, required=True)
    p_chi.add_argument("--quad-tol", type=float, default=1e-9)
    p_chi.add_argument("--out", default=None)
    p_chi.add_argument("--json", action="store_true")
    p_chi.set_defaults(func=cmd_chi)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad arguments and 0 on --help/--version
        return int(exc.code or 0)
    if getattr(args, "grid", 2) < 2 or getattr(args, "samples", 2) < 2:
        print("error: grid/samples must be >= 2", file=sys.stderr)
        return 2
    if getattr(args, "tol", 1.0) <= 0 or getattr(args, "quad_tol", 1.0) <= 0:
        print("error: tolerances must be positive", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
