"""Command line entry point: ``bellfield run|analyze|check``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace

from .errors import BellfieldError, ParseError, ValidationError
from .inequalities import (
    analyze_matrix,
    chsh_value,
    parse_matrix_text,
)
from .phase_statistics import closed_form_correlation
from .runner import load_config, locality_check, render_report, run_experiment, write_table
from .runner.config import MODES
from .runner.locality import LOCALITY_TOL, is_vacuous

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


def _cmd_run(args) -> int:
    cfg = load_config(args.config)
    if args.mode:
        cfg = replace(cfg, mode=args.mode)
    table, report = run_experiment(cfg)
    if args.out:
        write_table(table, args.out)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(render_report(report, "json"))
    sys.stdout.write(render_report(report, args.format))
    return EXIT_OK


def _cmd_chsh(args) -> int:
    angles = [math.radians(a) for a in (args.theta1, args.theta2, args.theta1p, args.theta2p)]
    res = chsh_value(closed_form_correlation, *angles)
    verdict = "VIOLATED (|S| > 2)" if res.violated else "satisfied (|S| <= 2)"
    if args.json:
        print(json.dumps({"chsh_value": res.value, "violated": res.violated}, sort_keys=True))
    else:
        print(f"CHSH S = {res.value:.7f} {verdict}")
    return EXIT_OK


def _cmd_joint(args) -> int:
    with open(args.matrix, encoding="utf-8") as fh:
        matrix = parse_matrix_text(fh.read())
    rep = analyze_matrix(matrix, discrete=args.discrete)
    if args.json:
        out = {
            "eigenvalues": rep.eigenvalues,
            "joint_exists_continuous": rep.psd_verdict,
            "tolerance": rep.tolerance,
            "bell3_sum": rep.bell3_sum,
            "joint_exists_discrete": rep.discrete_feasible,
        }
        print(json.dumps(out, sort_keys=True))
        return EXIT_OK
    print("eigenvalues = " + ", ".join(f"{w:.7f}" for w in rep.eigenvalues))
    print(f"joint distribution (continuous, PSD tol {rep.tolerance:.0e}): {str(rep.psd_verdict).lower()}")
    if rep.bell3_sum is not None:
        print(f"Bell-3 sum = {rep.bell3_sum:.7f} {'satisfied' if rep.bell3_sum >= -1 else 'VIOLATED (< -1)'}")
    if args.discrete:
        if rep.discrete_feasible is None:
            print("joint distribution (+/-1 atoms): not evaluated (n > 5)")
        else:
            print(f"joint distribution (+/-1 atoms): {str(rep.discrete_feasible).lower()}")
    return EXIT_OK


def _cmd_locality(args) -> int:
    cfg = load_config(args.config)
    ifc = cfg.interferometer()
    residual = locality_check(ifc)
    passed = residual <= LOCALITY_TOL
    note = " (vacuous: no light at the detectors)" if is_vacuous(ifc) else ""
    print(f"locality max residual = {residual:.3e} {'PASS' if passed else 'FAIL'}{note}")
    return EXIT_OK if passed else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bellfield", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment from a JSON config")
    run.add_argument("--config", required=True)
    run.add_argument("--mode", choices=MODES)
    run.add_argument("--out", help="write the data table CSV here")
    run.add_argument("--report", help="write the JSON report here")
    run.add_argument("--format", choices=("text", "json"), default="text", help="stdout report format")
    run.set_defaults(func=_cmd_run)

    analyze = sub.add_parser("analyze", help="stand-alone inequality analyses")
    asub = analyze.add_subparsers(dest="analysis", required=True)
    chsh = asub.add_parser("chsh", help="CHSH value of -sin correlations at four settings (degrees)")
    for name in ("theta1", "theta2", "theta1p", "theta2p"):
        chsh.add_argument(f"--{name}", type=float, required=True)
    chsh.add_argument("--json", action="store_true")
    chsh.set_defaults(func=_cmd_chsh)
    joint = asub.add_parser("joint", help="joint-distribution tests for a correlation matrix")
    joint.add_argument("--matrix", required=True, help="whitespace-separated rows")
    joint.add_argument("--discrete", action="store_true", help="also run the zero-mean +/-1 LP")
    joint.add_argument("--json", action="store_true")
    joint.set_defaults(func=_cmd_joint)

    check = sub.add_parser("check", help="model checks")
    csub = check.add_subparsers(dest="check", required=True)
    loc = csub.add_parser("locality", help="distant-setting independence of each homodyne output")
    loc.add_argument("--config", required=True)
    loc.set_defaults(func=_cmd_locality)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError) as exc:
        print(f"bellfield: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"bellfield: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BellfieldError as exc:
        print(f"bellfield: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    raise SystemExit(main())
