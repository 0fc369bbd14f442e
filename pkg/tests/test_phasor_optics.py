import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bellfield.errors import IntegrationGridError
from bellfield.phasor_optics import (
    BeamSplitterConvention,
    DetectorField,
    InterferometerConfig,
    Phasor,
    apply_beam_splitter,
    closed_form_intensities,
    conditional_intensities,
    intensity,
    propagate,
    time_domain_oracle,
)

angles = st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False)
amps = st.floats(0, 10, allow_nan=False)


def test_beam_splitter_halves_amplitude_and_shifts_reflection():
    t, r = apply_beam_splitter(Phasor(3.0, 0.4))
    assert t.is_close(Phasor(1.5, 0.4))
    assert r.is_close(Phasor(1.5, 0.4 + math.pi / 2))


def test_beam_splitter_zero_field():
    t, r = apply_beam_splitter(Phasor(0.0, 1.0))
    assert t.amplitude == 0 and r.amplitude == 0
    assert r.is_close(Phasor(0.0, 1.0 + math.pi / 2))


def test_u_path_to_d1_reflect_then_transmit():
    _, r = apply_beam_splitter(Phasor(2.0, 0.3))
    t, _ = apply_beam_splitter(r)
    assert t.is_close(Phasor(0.5, 0.3 + math.pi / 2))


def test_phasor_rejects_negative_amplitude():
    with pytest.raises(ValueError):
        Phasor(-1.0, 0.0)


def test_phasor_equality_is_mod_two_pi():
    assert Phasor(1.0, 0.1).is_close(Phasor(1.0, 0.1 + 4 * math.pi))
    assert not Phasor(1.0, 0.1).is_close(Phasor(1.0, 0.2))


def test_propagate_paths():
    cfg = InterferometerConfig(alpha=2.0, beta=4.0, theta1=0.7, theta2=-0.2)
    th = 1.1
    f = propagate(cfg, th)
    expected = {
        "D1": [(1.0, th + math.pi / 2), (1.0, 0.7 + math.pi / 2)],
        "D2": [(1.0, th + math.pi), (1.0, 0.7)],
        "D3": [(1.0, th + math.pi / 2), (1.0, -0.2)],
        "D4": [(1.0, th), (1.0, -0.2 + math.pi / 2)],
    }
    for det, contribs in expected.items():
        assert len(f[det].contributions) == 2
        for got, (a, ph) in zip(f[det].contributions, contribs):
            assert got.is_close(Phasor(a, ph))


def test_dark_references_leave_only_u():
    f = propagate(InterferometerConfig(alpha=0.0, beta=2.0), 0.3)
    for det in f.values():
        amps_ = sorted(p.amplitude for p in det.contributions)
        assert amps_ == [0.0, 0.5]


def test_beta_zero_alpha_two_gives_half_everywhere():
    cfg = InterferometerConfig(alpha=2.0, beta=0.0)
    assert conditional_intensities(cfg, 0.9) == pytest.approx((0.5,) * 4, abs=1e-12)
    assert time_domain_oracle(cfg, 0.9) == pytest.approx((0.5,) * 4, abs=1e-9)


def test_intensity_single_and_destructive():
    assert intensity(DetectorField("D1", (Phasor(3.0, 0.2),))) == pytest.approx(4.5)
    assert intensity(DetectorField("D1", (Phasor(1.0, 0.2), Phasor(1.0, 0.2 + math.pi)))) == pytest.approx(0, abs=1e-15)


def test_d1_at_reference_phase():
    cfg = InterferometerConfig(alpha=2.0, beta=2.0, theta1=0.4, theta2=0.4)
    i = conditional_intensities(cfg, 0.4)
    assert i == pytest.approx((1.125, 0.125, 0.625, 0.625), abs=1e-12)
    assert time_domain_oracle(cfg, 0.4) == pytest.approx((1.125, 0.125, 0.625, 0.625), abs=1e-9)


def test_all_dark():
    cfg = InterferometerConfig(alpha=0.0, beta=0.0)
    assert conditional_intensities(cfg, 1.0) == (0.0, 0.0, 0.0, 0.0)
    assert time_domain_oracle(cfg, 1.0) == (0.0, 0.0, 0.0, 0.0)


def test_oracle_single_source():
    # only the u arm lit, amplitude 8 -> 2 at every detector -> 2^2/2
    cfg = InterferometerConfig(alpha=0.0, beta=8.0)
    assert time_domain_oracle(cfg, 0.0) == pytest.approx((2.0,) * 4, abs=1e-12)


def test_oracle_rejects_coarse_grid():
    with pytest.raises(IntegrationGridError):
        time_domain_oracle(InterferometerConfig(1.0, 1.0), 0.0, steps_per_period=32)


def test_vectorized_theta_matches_scalar():
    cfg = InterferometerConfig(alpha=1.3, beta=0.7, theta1=0.2, theta2=2.0)
    th = np.linspace(0, 6, 7)
    vec = conditional_intensities(cfg, th)
    for k, t in enumerate(th):
        assert [v[k] for v in vec] == pytest.approx(conditional_intensities(cfg, t), abs=1e-15)


def test_energy_conserving_convention_is_selectable():
    bs = BeamSplitterConvention.energy_conserving()
    cfg = InterferometerConfig(alpha=1.0, beta=1.0, theta1=0.3, convention=bs)
    assert conditional_intensities(cfg, 0.8) == pytest.approx(time_domain_oracle(cfg, 0.8), abs=1e-9)
    i1, i2, i3, i4 = conditional_intensities(cfg, 0.8)
    # lossless splitters: all input power reaches the four detectors
    assert i1 + i2 + i3 + i4 == pytest.approx(0.5 * (1.0**2 + 2 * 1.0**2), abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(theta=angles, t1=angles, t2=angles, a=amps, b=amps)
def test_phasor_matches_time_domain(theta, t1, t2, a, b):
    cfg = InterferometerConfig(alpha=a, beta=b, theta1=t1, theta2=t2)
    assert conditional_intensities(cfg, theta) == pytest.approx(
        time_domain_oracle(cfg, theta, periods=1, steps_per_period=4096), abs=1e-9
    )


@settings(max_examples=200, deadline=None)
@given(theta=angles, t1=angles, t2=angles, a=amps, b=amps)
def test_intensity_properties(theta, t1, t2, a, b):
    cfg = InterferometerConfig(alpha=a, beta=b, theta1=t1, theta2=t2)
    i1, i2, i3, i4 = conditional_intensities(cfg, theta)
    assert min(i1, i2, i3, i4) >= 0
    total = b * b / 16 + a * a / 4
    assert i1 + i2 == pytest.approx(total, abs=1e-12 * max(1, total))
    assert i3 + i4 == pytest.approx(total, abs=1e-12 * max(1, total))
    assert (i1, i2, i3, i4) == pytest.approx(closed_form_intensities(cfg, theta), abs=1e-12 * max(1, total))


@settings(max_examples=100, deadline=None)
@given(theta=angles, t1=angles, t2=angles, shift=angles)
def test_common_phase_shift_invariance(theta, t1, t2, shift):
    cfg = InterferometerConfig(alpha=1.5, beta=2.5, theta1=t1, theta2=t2)
    moved = InterferometerConfig(alpha=1.5, beta=2.5, theta1=t1 + shift, theta2=t2 + shift)
    assert conditional_intensities(moved, theta + shift) == pytest.approx(
        conditional_intensities(cfg, theta), abs=1e-12
    )


@settings(max_examples=100, deadline=None)
@given(theta=angles, t1=angles, t2=angles, other=angles)
def test_structural_locality(theta, t1, t2, other):
    cfg = InterferometerConfig(alpha=1.0, beta=2.0, theta1=t1, theta2=t2)
    base = propagate(cfg, theta)
    f2 = propagate(cfg.with_settings(theta2=other), theta)
    f1 = propagate(cfg.with_settings(theta1=other), theta)
    for det in ("D1", "D2"):
        assert all(p.is_close(q) for p, q in zip(base[det].contributions, f2[det].contributions))
    for det in ("D3", "D4"):
        assert all(p.is_close(q) for p, q in zip(base[det].contributions, f1[det].contributions))
