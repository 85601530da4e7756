"""Command-line front end: JSON reports on stdout, summaries on stderr.

Exit codes: 0 verified, 1 verification failure or infeasible data,
2 usage / input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .disk import DiskPoint, rho, rho_from_kernel
from .errors import BergkreinError, Infeasible, UsageError
from .krein import KVector, is_k_contraction
from .pick import (
    TwoPointProblem,
    build_contraction_T,
    det_exact,
    gram_certificate,
    hadamard,
    interpolation_residual,
    pick_matrix,
    pick_matrix_squared,
    psd_exact,
    psd_float,
    solve_indefinite_two_point,
    solve_schur_two_point,
)
from .scalars import (
    QComplex,
    format_complex,
    format_qcomplex,
    parse_complex,
    parse_qcomplex,
)
from .series import BallPoint, gram_embedding_check, k_indef, kernel_split, truncation_bound
from .verify import identity_report

SCHEMA = "bergkrein-report/1"


def _report(command: str, inputs: dict, outputs: dict, checks: list,
            seed=None) -> dict:
    rep = {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "checks": checks,
    }
    if seed is not None:
        rep["seed"] = seed
    return rep


def _emit(rep: dict) -> int:
    print(json.dumps(rep, indent=2))
    fails = [c for c in rep["checks"] if not c["passed"]]
    for c in rep["checks"]:
        status = "ok" if c["passed"] else "FAIL"
        print(f"[{status}] {c['name']}", file=sys.stderr)
    return 1 if fails else 0


def _disk_point(text: str, exact: bool = False) -> DiskPoint:
    try:
        value = parse_qcomplex(text) if exact else parse_complex(text)
        return DiskPoint(value)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _point_list(text: str, exact: bool = False):
    return [_disk_point(tok, exact) for tok in text.split(",") if tok.strip()]


def _cmd_rho(args) -> int:
    p = _disk_point(args.lam)
    q = _disk_point(args.mu)
    val = rho(p, q)
    alt = rho_from_kernel(p, q)
    checks = [{"name": "two rho forms agree", "passed": abs(val - alt) < 1e-12,
               "residual": abs(val - alt)}]
    return _emit(_report("rho", {"lam": args.lam, "mu": args.mu},
                         {"rho": float(f"{val:.15g}"),
                          "rho_from_kernel": float(f"{alt:.15g}")}, checks))


def _cmd_pick_check(args) -> int:
    nodes = _point_list(args.nodes, args.exact)
    targets = _point_list(args.targets, args.exact)
    matrix = (pick_matrix_squared if args.kernel == "squared"
              else pick_matrix)(nodes, targets)
    if args.exact:
        verdict = psd_exact(matrix)
        det = format_qcomplex(QComplex(det_exact(matrix)))
    else:
        verdict = psd_float(matrix)
        det = None
    outputs = {"matrix": matrix.to_strings(), "verdict": verdict.to_json()}
    if det is not None:
        outputs["determinant"] = det
    checks = [{"name": f"{args.kernel} Pick matrix PSD",
               "passed": verdict.is_psd}]
    return _emit(_report("pick-check",
                         {"nodes": args.nodes, "targets": args.targets,
                          "kernel": args.kernel, "exact": args.exact},
                         outputs, checks))


def _two_point(args) -> TwoPointProblem:
    nodes = _point_list(args.nodes)
    targets = _point_list(args.targets)
    if len(nodes) != 2 or len(targets) != 2:
        raise UsageError("two-point interpolation needs exactly 2 nodes and 2 targets")
    return TwoPointProblem(nodes[0], nodes[1], targets[0], targets[1])


def _cmd_interpolate(args) -> int:
    p = _two_point(args)
    inputs = {"nodes": args.nodes, "targets": args.targets}
    try:
        chain = solve_indefinite_two_point(p)
    except Infeasible as exc:
        rep = _report("interpolate", inputs,
                      {"error": "infeasible",
                       "rho_nodes": exc.rho_nodes,
                       "rho_targets": exc.rho_targets},
                      [{"name": "solvable", "passed": False}],
                      seed=args.seed)
        _emit(rep)
        return 1
    t = build_contraction_T(p)
    resid = interpolation_residual(chain, p)
    min_eig = gram_certificate(chain, args.trials, args.seed)
    checks = [
        {"name": "interpolation residual < 1e-9", "passed": resid < 1e-9,
         "residual": resid},
        {"name": "T is a K-contraction", "passed": is_k_contraction(t)},
        {"name": "ratio-kernel Grams PSD", "passed": min_eig >= -1e-8,
         "min_eig": min_eig},
    ]
    outputs = {"chain": chain.describe(),
               "contraction": [repr(complex(e)) for e in t.entries()],
               "rho_nodes": p.rho_nodes(), "rho_targets": p.rho_targets()}
    return _emit(_report("interpolate", inputs, outputs, checks,
                         seed=args.seed))


def _cmd_schur_interpolate(args) -> int:
    p = _two_point(args)
    inputs = {"nodes": args.nodes, "targets": args.targets}
    try:
        f = solve_schur_two_point(p)
    except Infeasible as exc:
        _emit(_report("schur-interpolate", inputs,
                      {"error": "infeasible",
                       "rho_nodes": exc.rho_nodes,
                       "rho_targets": exc.rho_targets},
                      [{"name": "solvable", "passed": False}]))
        return 1
    r1 = abs(f(p.lam1.to_complex()) - p.om1.to_complex())
    r2 = abs(f(p.lam2.to_complex()) - p.om2.to_complex())
    checks = [{"name": "interpolates both nodes", "passed": max(r1, r2) < 1e-12,
               "residuals": [r1, r2]},
              {"name": "|c| <= 1", "passed": abs(f.c) <= 1 + 1e-12}]
    return _emit(_report("schur-interpolate", inputs,
                         {"c": format_complex(f.c)}, checks))


def _cmd_verify_identities(args) -> int:
    rep = identity_report(trials=args.trials, seed=args.seed)
    checks = [
        {"name": "Moebius identities (i)-(vi)",
         "passed": max(rep["moebius_identities"].values()) < 1e-9},
        {"name": "composition factorization",
         "passed": max(rep["factorization"].values()) < 1e-8},
        {"name": "distance identities",
         "passed": (rep["distance"]["kernel_agreement"] < 1e-12
                    and rep["distance"]["invariance"] < 1e-12
                    and rep["distance"]["schwarz_pick_slack"] < 1e-12
                    and rep["distance"]["triangle_slack"] < 1e-12)},
        {"name": "squared Pick vs distance ordering",
         "passed": rep["pick_distance"]["mismatches"] == 0},
        {"name": "contraction ratio-kernel Grams PSD",
         "passed": rep["contraction_grams"]["min_gram_eig"] >= -1e-8},
    ]
    return _emit(_report("verify-identities",
                         {"trials": args.trials}, rep, checks,
                         seed=args.seed))


def _cmd_kernel_eval(args) -> int:
    try:
        z1, z2 = [parse_complex(t) for t in args.z.split(",")]
        l1, l2 = [parse_complex(t) for t in args.lam.split(",")]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    try:
        z = BallPoint(KVector(z1, z2))
        lam = BallPoint(KVector(l1, l2))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    kp, km = kernel_split(z, lam, args.truncation)
    closed = k_indef(z.value, lam.value)
    bound = truncation_bound(z, lam, args.truncation)
    residual = abs((kp - km) - closed)
    checks = [{"name": "truncation error within bound",
               "passed": residual <= bound + args.tol, "residual": residual}]
    outputs = {"K_closed": format_complex(closed),
               "K_plus": format_complex(kp),
               "K_minus": format_complex(km),
               "N": args.truncation, "bound": bound, "residual": residual}
    return _emit(_report("kernel-eval",
                         {"z": args.z, "lam": args.lam}, outputs, checks))


def verify_paper_example() -> dict:
    """Bit-exact reproduction of the three-node counterexample: the Pick
    matrix fails PSD while its entrywise square is positive definite."""
    nodes = [DiskPoint(QComplex(Fraction(2, 3))),
             DiskPoint(QComplex(Fraction(3, 4))),
             DiskPoint(QComplex(0))]
    targets = [DiskPoint(QComplex(Fraction(1, 3))),
               DiskPoint(QComplex(Fraction(1, 4))),
               DiskPoint(QComplex(0))]
    p = pick_matrix(nodes, targets)
    msq = pick_matrix_squared(nodes, targets)
    checks = []

    def check(name, passed, got=None):
        entry = {"name": name, "passed": bool(passed)}
        if got is not None:
            entry["value"] = got
        checks.append(entry)

    expect_p = [Fraction(8, 5), Fraction(11, 6), Fraction(15, 7)]
    got_p = [p.entries[0][0], p.entries[0][1], p.entries[1][1]]
    check("Pick entries 8/5, 11/6, 15/7",
          got_p == [QComplex(v) for v in expect_p],
          [format_qcomplex(v) for v in got_p])
    expect_sq = [Fraction(64, 25), Fraction(121, 36), Fraction(225, 49)]
    got_sq = [msq.entries[0][0], msq.entries[0][1], msq.entries[1][1]]
    check("squared entries 64/25, 121/36, 225/49",
          got_sq == [QComplex(v) for v in expect_sq],
          [format_qcomplex(v) for v in got_sq])
    check("squared equals Hadamard square", hadamard(p, p).entries == msq.entries)
    dp = det_exact(p)
    check("det(P) = -11/1260", dp == Fraction(-11, 1260),
          format_qcomplex(QComplex(dp)))
    d2 = det_exact(msq.submatrix((0, 1)))
    check("2x2 leading minor of square = 29087/63504",
          d2 == Fraction(29087, 63504), format_qcomplex(QComplex(d2)))
    dsq = det_exact(msq)
    check("det(square) = 45119/1587600", dsq == Fraction(45119, 1587600),
          format_qcomplex(QComplex(dsq)))
    vp = psd_exact(p)
    check("P not PSD (witness -11/1260)",
          not vp.is_psd and vp.witness[1] == Fraction(-11, 1260),
          vp.to_json())
    vsq = psd_exact(msq)
    check("square PSD", vsq.is_psd, vsq.to_json())
    return _report("verify-paper-example",
                   {"nodes": ["2/3", "3/4", "0"], "targets": ["1/3", "1/4", "0"]},
                   {"pick": p.to_strings(), "squared": msq.to_strings()},
                   checks)


def _cmd_verify_paper_example(_args) -> int:
    return _emit(verify_paper_example())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bergkrein")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("rho", help="invariant distance between two disk points")
    p.add_argument("lam")
    p.add_argument("mu")
    p.set_defaults(func=_cmd_rho)

    p = sub.add_parser("pick-check", help="PSD test of a (squared) Pick matrix")
    p.add_argument("--nodes", required=True)
    p.add_argument("--targets", required=True)
    p.add_argument("--kernel", choices=["classical", "squared"],
                   default="classical")
    p.add_argument("--exact", action="store_true",
                   help="exact rationals: inputs like 2/3 or 1/2+1/4i")
    p.set_defaults(func=_cmd_pick_check)

    p = sub.add_parser("interpolate",
                       help="two-point indefinite interpolation on the ball")
    p.add_argument("--nodes", required=True)
    p.add_argument("--targets", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=16)
    p.set_defaults(func=_cmd_interpolate)

    p = sub.add_parser("schur-interpolate",
                       help="classical two-point Schur interpolant")
    p.add_argument("--nodes", required=True)
    p.add_argument("--targets", required=True)
    p.set_defaults(func=_cmd_schur_interpolate)

    p = sub.add_parser("verify-identities",
                       help="seeded property suites over all identities")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=500)
    p.set_defaults(func=_cmd_verify_identities)

    p = sub.add_parser("kernel-eval",
                       help="split-series evaluation of the indefinite kernel")
    p.add_argument("--z", required=True, help="ball point 'z1,z2'")
    p.add_argument("--lam", required=True, help="ball point 'l1,l2'")
    p.add_argument("--truncation", type=int, default=80)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=_cmd_kernel_eval)

    p = sub.add_parser("verify-paper-example",
                       help="bit-exact three-node counterexample reproduction")
    p.set_defaults(func=_cmd_verify_paper_example)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BergkreinError as exc:
        print(json.dumps({"schema": SCHEMA, "command": args.cmd,
                          "error": str(exc)}, indent=2))
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
