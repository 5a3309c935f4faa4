"""Command-line interface.

Subcommands::

    validate          coherence checks on a skeletal data file
    gen-vecg          emit (F0, F1) data for graded lines over a finite group
    compute-dual      run the dual-data pipeline on a module file
    check-invertible  decide invertibility of a bimodule file
    verify-wha        build the tube algebra and check every axiom
    check-mpo         injectivity identity and matrix-element orthogonality
    report            render figures and a CSV summary for a data file

Exit codes: 0 success, 1 error or failed validation; check-invertible and
check-mpo use 2 for a clean negative verdict. The environment variable
MORITA_SEED overrides --seed everywhere.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import io
from .annular import build_algebra, verify_wha
from .dualdata import assemble_dual
from .errors import MoritaError
from .invertibility import check_invertible, check_mpo_injectivity
from .repdecomp import DEFAULT_SEED
from .skeletal import (BimoduleData, ModuleData, verify_pentagons,
                       verify_unit_blocks, verify_unitarity)
from .vecg import gen_vecg, group_by_name


def _seed_from(args) -> int:
    env = os.environ.get("MORITA_SEED")
    if env is not None:
        return int(env)
    return args.seed


def _load(path, tolerance=None):
    if path == "-":
        data = io.loads(sys.stdin.read())
    else:
        data = io.load(path)
    if tolerance is not None:
        data.tolerance = tolerance
    return data


def _save(data, path) -> None:
    if path == "-":
        sys.stdout.write(io.dumps(data))
    else:
        io.save(data, path)
        print(f"wrote {path}")


def _validation_payload(data):
    tol = data.tolerance
    unitarity = verify_unitarity(data)
    pentagons = verify_pentagons(data)
    units = verify_unit_blocks(data)
    passed = unitarity.passed(tol) and pentagons.passed(tol) \
        and max(units.values(), default=0.0) < tol
    return {
        "tolerance": tol,
        "passed": bool(passed),
        "unitarity": {k: v for k, v in unitarity.residuals.items()},
        "worst_unitary_block": {k: list(v) if v else None
                                for k, v in unitarity.worst_block.items()},
        "pentagons": dict(pentagons.residuals),
        "pentagon_instances": dict(pentagons.instances),
        "unit_blocks": units,
    }


def cmd_validate(args) -> int:
    data = _load(args.file, args.tolerance)
    payload = _validation_payload(data)
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"tolerance: {payload['tolerance']:g}")
        for fam, res in payload["unitarity"].items():
            worst = payload["worst_unitary_block"][fam]
            extra = f"  (worst block {tuple(worst)})" if worst and \
                res >= payload["tolerance"] else ""
            print(f"unitarity {fam}: {res:.3e}{extra}")
        for word, res in payload["pentagons"].items():
            print(f"pentagon {word}: {res:.3e} "
                  f"({payload['pentagon_instances'][word]} instances)")
        for fam, res in payload["unit_blocks"].items():
            print(f"unit gauge {fam}: {res:.3e}")
        print("PASS" if payload["passed"] else "FAIL")
    return 0 if payload["passed"] else 1


def cmd_gen_vecg(args) -> int:
    name = args.group
    if os.path.exists(name):
        group = io.load_group(name)
    else:
        group = group_by_name(name)
    cocycle = None
    if args.cocycle:
        cocycle = io.load_cocycle(args.cocycle, group)
    _save(gen_vecg(group, cocycle), args.output)
    return 0


def cmd_compute_dual(args) -> int:
    data = _load(args.file, args.tolerance)
    if isinstance(data, BimoduleData):
        data = data.as_module()
    if not isinstance(data, ModuleData):
        raise MoritaError("compute-dual needs module data (F0 and F1)")
    bim = assemble_dual(data, seed=_seed_from(args), tolerance=data.tolerance)
    _save(bim, args.output)
    return 0


def cmd_check_invertible(args) -> int:
    data = _load(args.file, args.tolerance)
    if not isinstance(data, BimoduleData):
        raise MoritaError("check-invertible needs full bimodule data "
                          "(both categories and F2)")
    verdict = check_invertible(data)
    if args.json:
        payload = {
            "invertible": verdict.invertible,
            "fpdim_c": verdict.fpdim_c,
            "fpdim_d": verdict.fpdim_d,
            "gram_re": np.round(verdict.gram.real, 12).tolist(),
            "gram_im": np.round(verdict.gram.imag, 12).tolist(),
            "failure_modes": {
                k: (v if isinstance(v, str) else
                    {str(c): x for c, x in v.items()} if isinstance(v, dict) else v)
                for k, v in verdict.failure_modes.items()},
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"FPdim C = {verdict.fpdim_c:.9g}, FPdim D = {verdict.fpdim_d:.9g}")
        print("character Gram matrix (real part):")
        for row in np.round(verdict.gram.real, 6):
            print("  " + "  ".join(f"{x:8.4f}" for x in row))
        print(verdict.summary())
    return 0 if verdict.invertible else 2


def cmd_verify_wha(args) -> int:
    data = _load(args.file, args.tolerance)
    if isinstance(data, BimoduleData):
        data = data.as_module()
    if not isinstance(data, ModuleData):
        raise MoritaError("verify-wha needs module data (F0 and F1)")
    alg = build_algebra(data)
    report = verify_wha(alg, tolerance=data.tolerance)
    ok = report.passed(data.tolerance)
    if args.json:
        payload = {"dim": alg.dim, "passed": bool(ok),
                   "residuals": report.residuals,
                   "informative": report.informative,
                   "gram_min_eig": report.gram_min_eig}
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"tube algebra dimension: {alg.dim}")
        for name, res in sorted(report.residuals.items()):
            print(f"{name}: {res:.3e}")
        for name, res in sorted(report.informative.items()):
            print(f"{name}: {res:.3e} (informative)")
        print(f"gram min eigenvalue: {report.gram_min_eig:.6f}")
        print("PASS" if ok else
              f"FAIL at {report.first_violation[0]} = {report.first_violation[1]:.3e}")
    return 0 if ok else 1


def cmd_check_mpo(args) -> int:
    data = _load(args.file, args.tolerance)
    if not isinstance(data, BimoduleData):
        raise MoritaError("check-mpo needs full bimodule data")
    report = check_mpo_injectivity(data)
    if args.json:
        payload = {"mpo_residual": report.mpo_residual,
                   "schur_residual": report.schur_residual,
                   "mpo_passed": report.mpo_passed,
                   "schur_passed": report.schur_passed,
                   "agreement": report.agreement,
                   "tolerance": report.tolerance}
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"injectivity identity residual:  {report.mpo_residual:.3e} "
              f"({'pass' if report.mpo_passed else 'fail'})")
        print(f"matrix orthogonality residual:  {report.schur_residual:.3e} "
              f"({'pass' if report.schur_passed else 'fail'})")
        print(f"agreement: {int(report.agreement)}")
    if not report.agreement:
        return 1
    return 0 if report.mpo_passed else 2


def cmd_report(args) -> int:
    from .report import write_report

    data = _load(args.file, args.tolerance)
    paths = write_report(data, args.output, seed=_seed_from(args))
    for p in paths:
        print(f"wrote {p}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morita",
        description="skeletal category data, tube algebras, and invertibility checks")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, seed=False, output=False):
        p.add_argument("--tolerance", type=float, default=None,
                       help="override the file tolerance")
        if seed:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                           help="decomposition seed (MORITA_SEED overrides)")
        if output:
            p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("validate", help="check unitarity, pentagons, unit gauge")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("gen-vecg", help="generate graded-line module data")
    p.add_argument("--group", required=True,
                   help="bundled name (Z2, Z3, ..., Z2xZ2, S3, S4, D4, Q8) or a "
                        "JSON multiplication-table file")
    p.add_argument("--cocycle", default=None, help="JSON 2-cocycle value table")
    add_common(p, output=True)
    p.set_defaults(func=cmd_gen_vecg)

    p = sub.add_parser("compute-dual", help="assemble F2, F3, F4 from F0, F1")
    p.add_argument("file")
    add_common(p, seed=True, output=True)
    p.set_defaults(func=cmd_compute_dual)

    p = sub.add_parser("check-invertible", help="decide bimodule invertibility")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    add_common(p)
    p.set_defaults(func=cmd_check_invertible)

    p = sub.add_parser("verify-wha", help="check the weak Hopf axioms numerically")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    add_common(p)
    p.set_defaults(func=cmd_verify_wha)

    p = sub.add_parser("check-mpo", help="injectivity identity and orthogonality")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    add_common(p)
    p.set_defaults(func=cmd_check_mpo)

    p = sub.add_parser("report", help="write figures and a CSV summary")
    p.add_argument("file")
    add_common(p, seed=True, output=True)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MoritaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
