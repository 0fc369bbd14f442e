"""Check that each homodyne output ignores the distant reference phase."""

from __future__ import annotations

import math

import numpy as np

from ..phasor_optics import InterferometerConfig, Propagator, conditional_intensities, propagate

LOCALITY_TOL = 1e-12


def _ratio(num, den):
    ok = den != 0
    return np.where(ok, num / np.where(ok, den, 1.0), 0.0), ok


def is_vacuous(config: InterferometerConfig) -> bool:
    """No light reaches the detectors, so no conditional expectation is defined."""
    return config.alpha == 0 and config.beta == 0


def locality_check(
    config: InterferometerConfig,
    theta2_grid_points: int = 360,
    theta_grid_points: int = 36,
    propagator: Propagator = propagate,
) -> float:
    """Largest change of E(X|theta1, theta) when theta2 sweeps a full turn, and vice versa for Y."""
    theta = np.arange(theta_grid_points) * (2 * math.pi / theta_grid_points)
    sweep = np.arange(theta2_grid_points) * (2 * math.pi / theta2_grid_points)

    i1, i2, i3, i4 = conditional_intensities(config, theta, propagator)
    ref_x, ok_x = _ratio(i1 - i2, i1 + i2)
    ref_y, ok_y = _ratio(i3 - i4, i3 + i4)

    worst = 0.0
    for s in sweep:
        j1, j2, _, _ = conditional_intensities(config.with_settings(theta2=float(s)), theta, propagator)
        ex, ok = _ratio(j1 - j2, j1 + j2)
        mask = ok & ok_x
        if np.any(mask):
            worst = max(worst, float(np.max(np.abs(ex - ref_x)[mask])))
        if np.any(ok != ok_x):
            worst = max(worst, 1.0)
        _, _, j3, j4 = conditional_intensities(config.with_settings(theta1=float(s)), theta, propagator)
        ey, ok = _ratio(j3 - j4, j3 + j4)
        mask = ok & ok_y
        if np.any(mask):
            worst = max(worst, float(np.max(np.abs(ey - ref_y)[mask])))
        if np.any(ok != ok_y):
            worst = max(worst, 1.0)
    return worst
