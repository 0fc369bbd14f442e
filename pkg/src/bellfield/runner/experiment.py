"""Run the configured analyses and collect the data table plus report."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .. import rng
from ..errors import ZeroVarianceError
from ..inequalities import (
    PSD_TOL,
    AngleSet,
    analyze_matrix,
    build_correlation_matrix,
    cofactor_determinant,
    chsh_value,
    complete_chsh_matrix,
)
from ..phase_statistics import (
    MIN_MC_SAMPLES,
    closed_form_correlation,
    closed_form_covariance,
    covariance_of_differences,
    intensity_correlation,
    mc_estimate_correlation,
    unconditional_intensities,
    variance_of_difference,
)
from ..photon_counts import (
    COUNT_DEVIATION_NOTES,
    CountModelParams,
    analytic_count_correlation,
    closed_form_count_correlation,
    estimate_count_correlation,
    sample_count_arrays,
)
from ..phasor_optics import InterferometerConfig, conditional_intensities
from .config import ExperimentConfig
from .locality import LOCALITY_TOL, is_vacuous, locality_check
from .table import DataTable

CHSH_ANGLES_DEG = {"theta1": 60.0, "theta2": 0.0, "theta1p": 90.0, "theta2p": 30.0}
THREE_ANGLES_DEG = (0.0, 45.0, 90.0)
COUNTEREXAMPLE_DEG = (0.0, 30.0, 45.0)

SECTIONS = ("continuous", "chsh", "bell3", "counterexample", "counts", "locality")
_MODE_SECTIONS = {
    "continuous": ("continuous",),
    "counts": ("counts",),
    "inequalities": ("chsh", "bell3", "counterexample"),
    "locality": ("locality",),
    "full": SECTIONS,
}


@dataclass
class RunReport:
    config: dict
    sections: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    deviations: dict = field(default_factory=lambda: dict(COUNT_DEVIATION_NOTES))

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "sections": {name: self.sections.get(name) for name in SECTIONS},
            "notes": list(self.notes),
            "deviations": dict(self.deviations),
        }


def _mc_dict(est) -> dict:
    return {"value": est.value, "standard_error": est.standard_error, "samples": est.samples, "seed": est.seed}


def _continuous(cfg: ExperimentConfig, ifc: InterferometerConfig, notes: list) -> dict:
    out = {
        "analytic_correlation": None,
        "quadrature_correlation": None,
        "mc_correlation": None,
        "covariance": None,
        "variance_12": None,
        "variance_34": None,
        "unconditional_intensities": None,
    }
    if cfg.fixed_phase:
        notes.append(
            "hidden phase fixed: intensity differences do not fluctuate, the correlation is undefined "
            "and no inequality violation is claimed"
        )
        return out
    out["unconditional_intensities"] = {
        "quadrature": list(unconditional_intensities(ifc)),
        "closed_form": ifc.beta**2 / 32 + ifc.alpha**2 / 8,
    }
    out["covariance"] = {"quadrature": covariance_of_differences(ifc), "closed_form": closed_form_covariance(ifc)}
    out["variance_12"] = variance_of_difference(ifc, "12")
    out["variance_34"] = variance_of_difference(ifc, "34")
    try:
        out["quadrature_correlation"] = intensity_correlation(ifc)
    except ZeroVarianceError as exc:
        notes.append(f"continuous correlation undefined: {exc}")
        return out
    out["analytic_correlation"] = closed_form_correlation(ifc.theta1, ifc.theta2)
    if cfg.samples >= MIN_MC_SAMPLES:
        out["mc_correlation"] = _mc_dict(mc_estimate_correlation(ifc, cfg.samples, cfg.seed))
    elif cfg.samples > 0:
        notes.append(f"Monte Carlo skipped: samples={cfg.samples} < {MIN_MC_SAMPLES}")
    return out


def _chsh(cfg: ExperimentConfig, ifc: InterferometerConfig, notes: list) -> dict:
    a = {k: math.radians(v) for k, v in CHSH_ANGLES_DEG.items()}
    out = {"angles_deg": dict(CHSH_ANGLES_DEG), "bound": 2.0}
    if cfg.fixed_phase:
        notes.append("CHSH not evaluated: correlations are undefined under a fixed hidden phase")
        out.update(analytic_value=None, violated=None, mc_value=None, mc_standard_error=None, completion=None)
        return out
    analytic = chsh_value(closed_form_correlation, a["theta1"], a["theta2"], a["theta1p"], a["theta2p"])
    quad = chsh_value(
        lambda s1, s2: intensity_correlation(ifc.with_settings(s1, s2)),
        a["theta1"], a["theta2"], a["theta1p"], a["theta2p"],
    )
    out.update(analytic_value=analytic.value, quadrature_value=quad.value, violated=analytic.violated)
    out["mc_value"] = out["mc_standard_error"] = None
    if cfg.samples >= MIN_MC_SAMPLES:
        ests = {}

        def rho_mc(s1, s2):
            est = mc_estimate_correlation(ifc.with_settings(s1, s2), cfg.samples, cfg.seed)
            ests[(s1, s2)] = est
            return est.value

        mc = chsh_value(rho_mc, a["theta1"], a["theta2"], a["theta1p"], a["theta2p"])
        out["mc_value"] = mc.value
        out["mc_standard_error"] = math.sqrt(sum(e.standard_error**2 for e in ests.values()))

    four = (
        closed_form_correlation(a["theta1"], a["theta2"]),
        closed_form_correlation(a["theta1"], a["theta2p"]),
        closed_form_correlation(a["theta1p"], a["theta2"]),
        closed_form_correlation(a["theta1p"], a["theta2p"]),
    )
    comp = complete_chsh_matrix(four)
    out["completion"] = {
        "measured": list(four),
        "best_missing_pair": list(comp.best_missing_pair),
        "min_eigenvalue": comp.min_eigenvalue,
        "any_psd": comp.any_psd,
        "grid_best_pair": list(comp.grid_best_pair),
        "grid_min_eigenvalue": comp.grid_min_eigenvalue,
        "grid_any_psd": comp.grid_any_psd,
        "tolerance": PSD_TOL,
    }
    return out


def _three(angles_deg) -> dict:
    m = build_correlation_matrix(AngleSet(tuple(math.radians(t) for t in angles_deg)))
    rep = analyze_matrix(m)
    return {
        "angles_deg": list(angles_deg),
        "convention": "second_minus_first",
        "matrix": m.entries.tolist(),
        "bell3_sum": rep.bell3_sum,
        "bell3_satisfied": rep.bell3_sum >= -1.0,
        "eigenvalues": rep.eigenvalues,
        "determinant": cofactor_determinant(m.entries),
        "joint_exists_continuous": rep.psd_verdict,
        "joint_exists_discrete": rep.discrete_feasible,
        "tolerance": rep.tolerance,
    }


def _counts(cfg: ExperimentConfig, ifc: InterferometerConfig, notes: list):
    out = {"visibility": None, "quadrature_correlation": None, "closed_form_correlation": None,
           "quoted_correlation": None, "mc_correlation": None, "chsh_quadrature": None,
           "chsh_violated": None}
    if cfg.fixed_phase or ifc.alpha * ifc.beta == 0:
        notes.append("count analysis skipped: needs a uniform hidden phase and alpha, beta > 0")
        return out, None
    params = CountModelParams(ifc)
    out["visibility"] = params.visibility
    out["quadrature_correlation"] = analytic_count_correlation(params)
    out["closed_form_correlation"] = closed_form_count_correlation(params)
    out["quoted_correlation"] = closed_form_correlation(ifc.theta1, ifc.theta2)
    a = {k: math.radians(v) for k, v in CHSH_ANGLES_DEG.items()}
    s = chsh_value(
        lambda s1, s2: analytic_count_correlation(CountModelParams(ifc.with_settings(s1, s2))),
        a["theta1"], a["theta2"], a["theta1p"], a["theta2p"],
    )
    out["chsh_quadrature"] = s.value
    out["chsh_violated"] = s.violated
    arrays = None
    if cfg.samples > 0:
        arrays = sample_count_arrays(params, cfg.samples, cfg.seed)
        if cfg.samples >= MIN_MC_SAMPLES:
            out["mc_correlation"] = _mc_dict(estimate_count_correlation((arrays[1], arrays[2])))
            out["mc_correlation"]["seed"] = cfg.seed
    return out, arrays


def _locality(ifc: InterferometerConfig, notes: list) -> dict:
    residual = locality_check(ifc)
    vacuous = is_vacuous(ifc)
    if vacuous:
        notes.append("locality check vacuous: no light reaches the detectors")
    return {"max_residual": residual, "tolerance": LOCALITY_TOL, "passed": residual <= LOCALITY_TOL,
            "vacuous": vacuous}


def _table(cfg: ExperimentConfig, ifc: InterferometerConfig, counts=None) -> DataTable:
    n = cfg.samples
    if n == 0:
        return DataTable.empty()
    if counts is not None:
        theta, x, y = counts
    else:
        theta = np.full(n, ifc.hidden_phase.theta) if cfg.fixed_phase else rng.uniform_phases(cfg.seed, 0, n)
        x = y = None
    intens = np.column_stack(conditional_intensities(ifc, theta))
    return DataTable(np.arange(n, dtype=np.int64), theta, intens, x, y)


def run_experiment(cfg: ExperimentConfig) -> tuple[DataTable, RunReport]:
    ifc = cfg.interferometer()
    report = RunReport(config=cfg.to_json_dict())
    wanted = _MODE_SECTIONS[cfg.mode]
    counts_arrays = None
    if "continuous" in wanted:
        report.sections["continuous"] = _continuous(cfg, ifc, report.notes)
    if "chsh" in wanted:
        report.sections["chsh"] = _chsh(cfg, ifc, report.notes)
    if "bell3" in wanted:
        report.sections["bell3"] = _three(THREE_ANGLES_DEG)
    if "counterexample" in wanted:
        report.sections["counterexample"] = _three(COUNTEREXAMPLE_DEG)
    if "counts" in wanted:
        report.sections["counts"], counts_arrays = _counts(cfg, ifc, report.notes)
    if "locality" in wanted:
        report.sections["locality"] = _locality(ifc, report.notes)

    if cfg.mode in ("continuous", "counts", "full"):
        table = _table(cfg, ifc, counts_arrays)
    else:
        table = DataTable.empty()
    return table, report
