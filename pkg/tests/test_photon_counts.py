import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bellfield.errors import DegenerateIntensitiesError, HiddenPhaseError
from bellfield.inequalities import chsh_value
from bellfield.phasor_optics import FixedPhase, InterferometerConfig, conditional_intensities
from bellfield.photon_counts import (
    CountModelParams,
    CountSample,
    analytic_count_correlation,
    closed_form_count_correlation,
    conditional_expectations,
    estimate_count_correlation,
    expected_click_counts,
    sample_count_arrays,
    sample_counts,
)

from conftest import deg

angles = st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False)
positive = st.floats(0.05, 10, allow_nan=False)


def midpoint_average(f, n=20_000):
    th = (np.arange(n) + 0.5) * (2 * math.pi / n)
    return float(np.mean(f(th)))


def params(alpha=1.0, beta=2.0, t1=0.0, t2=0.0):
    return CountModelParams(InterferometerConfig(alpha, beta, t1, t2))


def test_visibility():
    assert params(1.0, 2.0).visibility == pytest.approx(1.0)
    assert params(1.0, 1.0).visibility == pytest.approx(0.8)
    a, b = 1.7, 0.4
    assert params(a, b).visibility == pytest.approx((a * b / 4) / (b * b / 16 + a * a / 4))


def test_conditional_expectation_examples():
    p = params(1.0, 2.0, t1=0.6, t2=0.2)
    ex, _ = conditional_expectations(p, 0.6)
    assert ex == pytest.approx(1.0, abs=1e-12)
    _, ey = conditional_expectations(p, 0.2 + math.pi / 2)
    assert ey == pytest.approx(-1.0, abs=1e-12)
    p = params(1.0, 1.0, t1=0.3)
    th = np.linspace(0, 6, 13)
    ex, _ = conditional_expectations(p, th)
    assert ex == pytest.approx(0.8 * np.cos(th - 0.3), abs=1e-12)


def test_conditional_expectations_degenerate():
    with pytest.raises(DegenerateIntensitiesError):
        conditional_expectations(params(0.0, 0.0), 0.1)


def test_sampling_certainty_slice():
    p = params(1.0, 2.0, t1=deg(40), t2=0.0)
    theta, x, _ = sample_count_arrays(p, 1_000_000, seed=9)
    d = np.abs(np.remainder(theta - deg(40) + math.pi, 2 * math.pi) - math.pi)
    sl = d <= deg(1)
    assert sl.sum() > 4000
    assert np.mean(x[sl] == 1) >= 0.999


def test_sample_means_vanish():
    p = params(1.0, 2.0, t1=deg(60), t2=0.0)
    _, x, y = sample_count_arrays(p, 1_000_000, seed=1)
    for v in (x, y):
        v = v.astype(float)
        se = v.std(ddof=1) / math.sqrt(len(v))
        assert abs(v.mean()) <= 3 * se


def test_sample_counts_records_match_arrays():
    p = params(1.0, 2.0, t1=0.5)
    rows = sample_counts(p, 100, seed=4)
    theta, x, y = sample_count_arrays(p, 100, seed=4)
    assert all(isinstance(r, CountSample) for r in rows)
    assert [r.x for r in rows] == x.tolist() and [r.theta for r in rows] == theta.tolist()


def test_sampling_rejects_fixed_phase():
    p = CountModelParams(InterferometerConfig(1.0, 2.0, hidden_phase=FixedPhase(0.0)))
    with pytest.raises(HiddenPhaseError):
        sample_count_arrays(p, 10, seed=0)


def test_analytic_correlation_quarter_turn():
    p = params(1.0, 2.0, t1=deg(90), t2=0.0)
    oracle = midpoint_average(lambda t: np.cos(t - deg(90)) * -np.sin(t))
    assert oracle == pytest.approx(-0.5, abs=1e-12)
    assert analytic_count_correlation(p) == pytest.approx(-0.5, abs=1e-12)


def test_analytic_correlation_equal_settings():
    assert analytic_count_correlation(params(1.0, 2.0, 0.4, 0.4)) == pytest.approx(0.0, abs=1e-12)


def test_analytic_correlation_partial_visibility():
    p = params(1.0, 1.0, t1=deg(50), t2=deg(5))
    oracle = midpoint_average(lambda t: 0.8 * np.cos(t - deg(50)) * -0.8 * np.sin(t - deg(5)))
    assert analytic_count_correlation(p) == pytest.approx(oracle, abs=1e-12)
    assert oracle == pytest.approx(-0.32 * math.sin(deg(45)), abs=1e-12)


def test_estimate_matches_analytic():
    p = params(1.0, 2.0, t1=deg(90), t2=0.0)
    _, x, y = sample_count_arrays(p, 1_000_000, seed=21)
    est = estimate_count_correlation((x, y))
    assert abs(est.value - (-0.5)) <= 3 * est.standard_error


def test_estimate_constant_samples():
    est = estimate_count_correlation([CountSample(0.0, 1, 1)] * 1000)
    assert est.value == 1.0 and est.standard_error == 0.0


def test_estimate_equal_settings():
    _, x, y = sample_count_arrays(params(1.0, 2.0, 0.3, 0.3), 200_000, seed=2)
    est = estimate_count_correlation((x, y))
    assert abs(est.value) <= 3 * est.standard_error


@pytest.mark.parametrize("t1,t2,alpha,beta", [(60, 0, 1.0, 2.0), (30, 100, 1.0, 1.0), (200, 10, 2.0, 1.0)])
def test_estimate_agrees_with_quadrature(t1, t2, alpha, beta):
    p = params(alpha, beta, deg(t1), deg(t2))
    _, x, y = sample_count_arrays(p, 400_000, seed=t1)
    est = estimate_count_correlation((x, y))
    assert abs(est.value - analytic_count_correlation(p)) <= 3 * est.standard_error


def test_conditional_independence_by_bins():
    p = params(1.0, 2.0, t1=deg(60), t2=0.0)
    theta, x, y = sample_count_arrays(p, 1_000_000, seed=77)
    bins = np.floor(theta / (2 * math.pi / 36)).astype(int)
    x, y = x.astype(float), y.astype(float)
    for b in range(36):
        sel = bins == b
        n = sel.sum()
        gap = abs(np.mean(x[sel] * y[sel]) - np.mean(x[sel]) * np.mean(y[sel]))
        assert gap <= 4 / math.sqrt(n)


@settings(max_examples=100, deadline=None)
@given(a=positive, b=positive, t1=angles, t2=angles, theta=angles)
def test_click_probabilities_in_unit_interval(a, b, t1, t2, theta):
    p = params(a, b, t1, t2)
    ex, ey = conditional_expectations(p, theta)
    v = p.visibility
    assert abs(ex) <= v + 1e-12 and abs(ey) <= v + 1e-12 and v <= 1 + 1e-12
    for e in (ex, ey):
        assert 0 <= (1 + e) / 2 <= 1


@settings(max_examples=60, deadline=None)
@given(a=positive, b=positive, t1=angles, t2=angles, t1p=angles, t2p=angles)
def test_count_model_never_violates_chsh(a, b, t1, t2, t1p, t2p):
    base = InterferometerConfig(a, b)
    p = CountModelParams(base.with_settings(t1, t2))
    assert abs(analytic_count_correlation(p)) <= p.visibility**2 / 2 + 1e-12
    assert analytic_count_correlation(p) == pytest.approx(closed_form_count_correlation(p), abs=1e-12)

    def rho(s1, s2):
        return analytic_count_correlation(CountModelParams(base.with_settings(s1, s2)))

    assert abs(chsh_value(rho, t1, t2, t1p, t2p).value) <= math.sqrt(2) + 1e-12


@settings(max_examples=60, deadline=None)
@given(a=positive, b=positive, t1=angles, theta=angles, n=st.floats(1, 1e6))
def test_click_counts_reproduce_intensity_difference(a, b, t1, theta, n):
    cfg = InterferometerConfig(a, b, t1, 0.0)
    p = CountModelParams(cfg, expected_counts=n)
    nx_plus, nx_minus, ny_plus, ny_minus = expected_click_counts(p, theta)
    i1, i2, i3, i4 = conditional_intensities(cfg, theta)
    assert nx_plus - nx_minus == pytest.approx(n * (i1 - i2) / (i1 + i2), rel=1e-9, abs=1e-9)
    assert ny_plus - ny_minus == pytest.approx(n * (i3 - i4) / (i3 + i4), rel=1e-9, abs=1e-9)
    assert nx_plus + nx_minus == pytest.approx(n)
