"""Text and JSON renderings of a :class:`RunReport`."""

from __future__ import annotations

import json

from .experiment import SECTIONS, RunReport


def report_json(report: RunReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _f(v) -> str:
    if v is None:
        return "n/a"
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    return f"{v:.7f}"


def _mc(est) -> str:
    if est is None:
        return "n/a"
    return f"{_f(est['value'])} +/- {_f(est['standard_error'])} (n={est['samples']}, seed={est['seed']})"


def _continuous(s: dict) -> list[str]:
    lines = [
        f"  analytic rho = {_f(s['analytic_correlation'])}",
        f"  quadrature rho = {_f(s['quadrature_correlation'])}",
        f"  Monte Carlo rho = {_mc(s['mc_correlation'])}",
    ]
    if s["unconditional_intensities"]:
        u = s["unconditional_intensities"]
        lines.append("  unconditional I1..I4 = " + " ".join(_f(v) for v in u["quadrature"])
                     + f" (closed form {_f(u['closed_form'])})")
    if s["covariance"]:
        lines.append(f"  Cov(I1-I2, I3-I4) = {_f(s['covariance']['quadrature'])}")
        lines.append(f"  Var(I1-I2) = {_f(s['variance_12'])}, Var(I3-I4) = {_f(s['variance_34'])}")
    return lines


def _chsh(s: dict) -> list[str]:
    ang = s["angles_deg"]
    lines = ["  angles (deg): " + ", ".join(f"{k}={_f(ang[k])}" for k in ("theta1", "theta2", "theta1p", "theta2p"))]
    if s["analytic_value"] is None:
        return lines + ["  CHSH S undefined (fixed hidden phase)"]
    verdict = "VIOLATED (|S| > 2)" if s["violated"] else "satisfied (|S| <= 2)"
    lines.append(f"CHSH S = {_f(s['analytic_value'])} {verdict}")
    lines.append(f"  quadrature S = {_f(s['quadrature_value'])}")
    if s["mc_value"] is not None:
        lines.append(f"  Monte Carlo S = {_f(s['mc_value'])} +/- {_f(s['mc_standard_error'])}")
    c = s["completion"]
    lines.append(
        f"  best completion of missing pair = ({_f(c['best_missing_pair'][0])}, {_f(c['best_missing_pair'][1])}), "
        f"min eigenvalue {_f(c['min_eigenvalue'])}, PSD completion exists: {_f(c['any_psd'])}"
    )
    return lines


def _three(s: dict) -> list[str]:
    verdict = "satisfied" if s["bell3_satisfied"] else "VIOLATED (< -1)"
    return [
        "  angles (deg): " + ", ".join(_f(a) for a in s["angles_deg"]),
        f"  Bell-3 sum = {_f(s['bell3_sum'])} {verdict}",
        "  eigenvalues = " + ", ".join(_f(v) for v in s["eigenvalues"]),
        f"  determinant = {_f(s['determinant'])}",
        f"  joint distribution (continuous, PSD tol {s['tolerance']:.0e}): {_f(s['joint_exists_continuous'])}",
        f"  joint distribution (+/-1 atoms): {_f(s['joint_exists_discrete'])}",
    ]


def _counts(s: dict) -> list[str]:
    if s["visibility"] is None:
        return ["  skipped"]
    return [
        f"  visibility V = {_f(s['visibility'])}",
        f"  quadrature rho(X,Y) = {_f(s['quadrature_correlation'])} (closed form {_f(s['closed_form_correlation'])})",
        f"  quoted rho(X,Y) = {_f(s['quoted_correlation'])}",
        f"  Monte Carlo rho(X,Y) = {_mc(s['mc_correlation'])}",
        f"  count CHSH S = {_f(s['chsh_quadrature'])} violated: {_f(s['chsh_violated'])}",
    ]


def _locality(s: dict) -> list[str]:
    verdict = "PASS" if s["passed"] else "FAIL"
    extra = " (vacuous)" if s["vacuous"] else ""
    return [f"  max residual = {s['max_residual']:.3e} {verdict}{extra}"]


_RENDER = {
    "continuous": ("Continuous intensity correlation", _continuous),
    "chsh": ("CHSH", _chsh),
    "bell3": ("Three-variable test", _three),
    "counterexample": ("Three-variable counterexample", _three),
    "counts": ("Photon-count model", _counts),
    "locality": ("Locality", _locality),
}


def report_text(report: RunReport) -> str:
    d = report.to_dict()
    cfg = d["config"]
    lines = [
        "bellfield run report",
        f"mode = {cfg['mode']}, alpha = {_f(cfg['alpha'])}, beta = {_f(cfg['beta'])}, "
        f"theta1_deg = {_f(cfg['theta1_deg'])}, theta2_deg = {_f(cfg['theta2_deg'])}, "
        f"samples = {cfg['samples']}, seed = {cfg['seed']}",
        "",
    ]
    for name in SECTIONS:
        title, fn = _RENDER[name]
        lines.append(f"[{title}]")
        section = d["sections"][name]
        lines.extend(fn(section) if section is not None else ["  not run"])
        lines.append("")
    lines.append("[Notes]")
    lines.extend(f"  - {n}" for n in d["notes"]) if d["notes"] else lines.append("  none")
    lines.append("")
    lines.append("[Documented deviations]")
    lines.extend(f"  - {k}: {v}" for k, v in sorted(d["deviations"].items()))
    return "\n".join(lines) + "\n"


def render_report(report: RunReport, fmt: str = "text") -> str:
    if fmt == "json":
        return report_json(report)
    if fmt == "text":
        return report_text(report)
    raise ValueError(f"unknown report format {fmt!r}")
