"""Phasor model of the two-homodyne interferometer.

Three monochromatic sources share one angular frequency: the field under
study ``u`` (amplitude beta, hidden phase theta) and two references
(amplitude alpha, phases theta1 and theta2). ``u`` is split at BS3; its
reflected half meets reference 1 at BS1 (detectors D1, D2), its
transmitted half meets reference 2 at BS2 (detectors D3, D4).

Phases may be numpy arrays, in which case every quantity is evaluated
element-wise over the hidden phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Union

import numpy as np

from .errors import IntegrationGridError

TWO_PI = 2.0 * math.pi
DETECTORS = ("D1", "D2", "D3", "D4")


@dataclass(frozen=True)
class Phasor:
    """Complex amplitude of ``amplitude * cos(omega t + phase)``."""

    amplitude: float
    phase: float | np.ndarray

    def __post_init__(self):
        if np.any(np.asarray(self.amplitude) < 0):
            raise ValueError(f"phasor amplitude must be >= 0, got {self.amplitude}")

    def as_complex(self):
        return self.amplitude * np.exp(1j * np.asarray(self.phase))

    def is_close(self, other: "Phasor", tol: float = 1e-12) -> bool:
        """Equal amplitudes and phases equal mod 2pi."""
        if abs(self.amplitude - other.amplitude) > tol:
            return False
        d = np.remainder(np.asarray(self.phase) - np.asarray(other.phase) + math.pi, TWO_PI) - math.pi
        return bool(np.all(np.abs(d) <= tol))


@dataclass(frozen=True)
class BeamSplitterConvention:
    transmission: float = 0.5
    reflection: float = 0.5
    reflection_phase: float = math.pi / 2

    def __post_init__(self):
        for name in ("transmission", "reflection"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ValueError(f"{name} factor must lie in (0, 1], got {v}")

    @classmethod
    def energy_conserving(cls) -> "BeamSplitterConvention":
        """1/sqrt(2) amplitude split. Not the default; exploratory only."""
        return cls(transmission=math.sqrt(0.5), reflection=math.sqrt(0.5))


DEFAULT_CONVENTION = BeamSplitterConvention()


@dataclass(frozen=True)
class UniformPhase:
    """Hidden phase uniform on [0, 2pi), redrawn on every run."""


@dataclass(frozen=True)
class FixedPhase:
    theta: float


HiddenPhase = Union[UniformPhase, FixedPhase]


@dataclass(frozen=True)
class FieldSource:
    amplitude: float
    phase: float | np.ndarray
    angular_frequency: float = TWO_PI

    def __post_init__(self):
        if self.amplitude < 0:
            raise ValueError(f"source amplitude must be >= 0, got {self.amplitude}")
        if self.angular_frequency <= 0:
            raise ValueError("angular frequency must be positive")


@dataclass(frozen=True)
class InterferometerConfig:
    """Parameters of the fixed network. Angles in radians."""

    alpha: float
    beta: float
    theta1: float = 0.0
    theta2: float = 0.0
    hidden_phase: HiddenPhase = field(default_factory=UniformPhase)
    convention: BeamSplitterConvention = DEFAULT_CONVENTION
    omega: float = TWO_PI

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError(f"amplitudes must be >= 0, got alpha={self.alpha}, beta={self.beta}")
        if self.omega <= 0:
            raise ValueError("omega must be positive")

    def with_settings(self, theta1: float | None = None, theta2: float | None = None) -> "InterferometerConfig":
        changes = {}
        if theta1 is not None:
            changes["theta1"] = theta1
        if theta2 is not None:
            changes["theta2"] = theta2
        return replace(self, **changes)

    def sources(self, theta) -> tuple[FieldSource, FieldSource, FieldSource]:
        """(u, reference 1, reference 2) at hidden phase ``theta``."""
        return (
            FieldSource(self.beta, theta, self.omega),
            FieldSource(self.alpha, self.theta1, self.omega),
            FieldSource(self.alpha, self.theta2, self.omega),
        )


@dataclass(frozen=True)
class DetectorField:
    detector: str
    contributions: tuple[Phasor, ...]


def apply_beam_splitter(
    incoming: Phasor, convention: BeamSplitterConvention = DEFAULT_CONVENTION
) -> tuple[Phasor, Phasor]:
    """Return ``(transmitted, reflected)``."""
    transmitted = Phasor(incoming.amplitude * convention.transmission, incoming.phase)
    reflected = Phasor(incoming.amplitude * convention.reflection, incoming.phase + convention.reflection_phase)
    return transmitted, reflected


def propagate(config: InterferometerConfig, theta) -> dict[str, DetectorField]:
    """Trace every source through the network; one contribution per path."""
    bs = config.convention
    u, ref1, ref2 = config.sources(theta)
    u_to_bs2, u_to_bs1 = apply_beam_splitter(Phasor(u.amplitude, u.phase), bs)

    # BS1: u arrives reflected from BS3, reference 1 from the other port
    u_d1, u_d2 = apply_beam_splitter(u_to_bs1, bs)
    r1_d2, r1_d1 = apply_beam_splitter(Phasor(ref1.amplitude, ref1.phase), bs)
    # BS2: u arrives transmitted through BS3
    u_d4, u_d3 = apply_beam_splitter(u_to_bs2, bs)
    r2_d3, r2_d4 = apply_beam_splitter(Phasor(ref2.amplitude, ref2.phase), bs)

    return {
        "D1": DetectorField("D1", (u_d1, r1_d1)),
        "D2": DetectorField("D2", (u_d2, r1_d2)),
        "D3": DetectorField("D3", (u_d3, r2_d3)),
        "D4": DetectorField("D4", (u_d4, r2_d4)),
    }


def intensity(detector_field: DetectorField):
    """Exact time average of the squared real field: |sum of phasors|^2 / 2."""
    total = sum(p.as_complex() for p in detector_field.contributions)
    return 0.5 * np.abs(total) ** 2


Propagator = Callable[[InterferometerConfig, object], dict]


def conditional_intensities(config: InterferometerConfig, theta, propagator: Propagator = propagate):
    """(I1, I2, I3, I4) given the hidden phase."""
    fields = propagator(config, theta)
    return tuple(intensity(fields[d]) for d in DETECTORS)


def closed_form_intensities(config: InterferometerConfig, theta):
    """Trigonometric expressions for the default 1/2-factor convention."""
    a, b = config.alpha, config.beta
    base = b * b / 32 + a * a / 8
    c = a * b / 8 * np.cos(theta - config.theta1)
    s = a * b / 8 * np.sin(theta - config.theta2)
    return base + c, base - c, base - s, base + s


# Detector -> list of (source index, beam-splitter actions along the path).
# Kept separate from propagate() so the time-domain oracle is an independent route.
_PATHS = {
    "D1": ((0, "rt"), (1, "r")),
    "D2": ((0, "rr"), (1, "t")),
    "D3": ((0, "tr"), (2, "t")),
    "D4": ((0, "tt"), (2, "r")),
}


def time_domain_oracle(
    config: InterferometerConfig, theta: float, periods: int = 1, steps_per_period: int = 4096
) -> tuple[float, float, float, float]:
    """Midpoint-rule average of the squared instantaneous field at each detector."""
    if steps_per_period < 64:
        raise IntegrationGridError(
            f"steps_per_period={steps_per_period} underflows the integration grid (need >= 64)"
        )
    if periods < 1:
        raise IntegrationGridError("periods must be a positive integer")
    bs = config.convention
    w = config.omega
    period = TWO_PI / w
    n = periods * steps_per_period
    t = (np.arange(n) + 0.5) * (period / steps_per_period)
    amps = (config.beta, config.alpha, config.alpha)
    phases = (theta, config.theta1, config.theta2)
    out = []
    for det in DETECTORS:
        signal = np.zeros(n)
        for src, actions in _PATHS[det]:
            a, ph = amps[src], phases[src]
            for act in actions:
                if act == "r":
                    a *= bs.reflection
                    ph += bs.reflection_phase
                else:
                    a *= bs.transmission
            signal += a * np.cos(w * t + ph)
        out.append(float(np.mean(signal * signal)))
    return tuple(out)
