"""Moments over the hidden phase.

The hidden phase is the only random ingredient. Averages use the periodic
trapezoid rule (spectrally exact for the trigonometric integrands here),
Monte Carlo draws come from the counter-based stream in :mod:`bellfield.rng`.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import rng
from .errors import HiddenPhaseError, ZeroVarianceError
from .phasor_optics import FixedPhase, InterferometerConfig, UniformPhase, conditional_intensities

QUADRATURE_POINTS = 1024
MC_BATCHES = 100
MIN_MC_SAMPLES = 1000


@dataclass(frozen=True)
class MomentEstimate:
    value: float
    method: Literal["closed_form", "quadrature", "monte_carlo"]
    standard_error: float = 0.0
    points: int | None = None
    samples: int | None = None
    seed: int | None = None

    def __post_init__(self):
        # MC may still report 0 when the sample is perfectly (anti)correlated
        if self.method != "monte_carlo" and self.standard_error != 0.0:
            raise ValueError("only Monte Carlo estimates carry a standard error")
        if self.standard_error < 0:
            raise ValueError("standard_error must be >= 0")


def phase_nodes(config: InterferometerConfig, points: int = QUADRATURE_POINTS) -> np.ndarray:
    """Equally weighted nodes representing the hidden-phase distribution."""
    hp = config.hidden_phase
    if isinstance(hp, FixedPhase):
        return np.array([hp.theta], dtype=float)
    return np.arange(points) * (2.0 * math.pi / points)


def _require_uniform(config: InterferometerConfig, what: str) -> None:
    if not isinstance(config.hidden_phase, UniformPhase):
        raise HiddenPhaseError(f"{what} needs a uniformly distributed hidden phase")


def differences(config: InterferometerConfig, theta):
    """Homodyne outputs ``(I1 - I2, I3 - I4)`` at the given phases."""
    i1, i2, i3, i4 = conditional_intensities(config, theta)
    return i1 - i2, i3 - i4


def unconditional_intensities(config: InterferometerConfig, points: int = QUADRATURE_POINTS):
    _require_uniform(config, "unconditional intensities")
    nodes = phase_nodes(config, points)
    return tuple(float(np.mean(i)) for i in conditional_intensities(config, nodes))


def covariance_of_differences(config: InterferometerConfig, points: int = QUADRATURE_POINTS) -> float:
    """Cov(I1 - I2, I3 - I4) over the hidden phase, by quadrature on the definition."""
    x, y = differences(config, phase_nodes(config, points))
    return float(np.mean(x * y) - np.mean(x) * np.mean(y))


def variance_of_difference(config: InterferometerConfig, side: str = "12", points: int = QUADRATURE_POINTS) -> float:
    if side not in ("12", "34"):
        raise ValueError(f"side must be '12' or '34', got {side!r}")
    x, y = differences(config, phase_nodes(config, points))
    d = x if side == "12" else y
    return float(np.mean(d * d) - np.mean(d) ** 2)


def closed_form_covariance(config: InterferometerConfig) -> float:
    return -(config.alpha**2) * config.beta**2 / 32 * math.sin(config.theta1 - config.theta2)


def closed_form_variance(config: InterferometerConfig) -> float:
    return config.alpha**2 * config.beta**2 / 32


def closed_form_correlation(theta1: float, theta2: float) -> float:
    return -math.sin(theta1 - theta2)


def intensity_correlation(config: InterferometerConfig, points: int = QUADRATURE_POINTS) -> float:
    """rho(I1 - I2, I3 - I4); the first setting drives (D1, D2)."""
    v12 = variance_of_difference(config, "12", points)
    v34 = variance_of_difference(config, "34", points)
    # relative floor: roundoff in the variance of a constant is ~eps * scale^2
    scale = (config.alpha**2 + config.beta**2) ** 2
    if config.alpha * config.beta == 0 or min(v12, v34) <= 1e-14 * scale:
        raise ZeroVarianceError(
            "intensity differences have zero variance; the correlation is undefined"
        )
    return covariance_of_differences(config, points) / math.sqrt(v12 * v34)


def batch_standard_error(values: np.ndarray) -> float:
    return float(np.std(values, ddof=1) / math.sqrt(len(values)))


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    xc = x - x.mean()
    yc = y - y.mean()
    den = math.sqrt(float(np.dot(xc, xc)) * float(np.dot(yc, yc)))
    if den == 0.0:
        raise ZeroVarianceError("sample has zero variance; the correlation is undefined")
    return float(np.dot(xc, yc)) / den


def sample_differences(config: InterferometerConfig, samples: int, seed: int, workers: int = 1):
    """Draw hidden phases and evaluate both homodyne outputs, in index order."""
    if workers <= 1:
        theta = rng.uniform_phases(seed, 0, samples)
        return (theta, *differences(config, theta))

    bounds = np.linspace(0, samples, workers + 1).astype(int)

    def chunk(k):
        lo, hi = int(bounds[k]), int(bounds[k + 1])
        theta = rng.uniform_phases(seed, lo, hi - lo)
        return (theta, *differences(config, theta))

    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(chunk, range(workers)))
    return tuple(np.concatenate([p[i] for p in parts]) for i in range(3))


def mc_estimate_correlation(config: InterferometerConfig, samples: int, seed: int, workers: int = 1) -> MomentEstimate:
    """Sample correlation of the homodyne outputs with a 100-batch standard error."""
    _require_uniform(config, "Monte Carlo correlation")
    if samples < MIN_MC_SAMPLES:
        raise ValueError(f"need at least {MIN_MC_SAMPLES} samples, got {samples}")
    if config.alpha * config.beta == 0:
        raise ZeroVarianceError("alpha * beta = 0: intensity differences do not fluctuate")
    _, x, y = sample_differences(config, samples, seed, workers)
    value = _pearson(x, y)
    batches = np.array(
        [_pearson(bx, by) for bx, by in zip(np.array_split(x, MC_BATCHES), np.array_split(y, MC_BATCHES))]
    )
    return MomentEstimate(
        value=value,
        method="monte_carlo",
        standard_error=batch_standard_error(batches),
        samples=samples,
        seed=seed,
    )
