import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from adoheston import (
    PowerLawFit,
    SkewCurve,
    ValidationError,
    fit_a_of_H,
    fit_power_law,
    fit_shared_exponent,
)
from conftest import A_TABLE


def synthetic_curve(H, a, slope, Ts=None):
    Ts = np.geomspace(0.001, 0.3, 50) if Ts is None else np.asarray(Ts)
    return SkewCurve(H=H, points=tuple((float(T), a * float(T) ** slope) for T in Ts))


# ----------------------------------------------------------- fit_power_law


def test_exact_power_law_recovery():
    # S = 0.02 * T^{-0.9} at H = 0.1: slope/(H - 1/2) = -0.9 / -0.4 = 2.25
    fit = fit_power_law(synthetic_curve(0.1, 0.02, -0.9))
    assert fit.a == pytest.approx(0.02, rel=1e-10)
    assert fit.b_scaled == pytest.approx(2.25, rel=1e-10)
    assert fit.rss < 1e-20


def test_half_H_raw_slope():
    fit = fit_power_law(synthetic_curve(0.5, 0.01, -0.3))
    assert fit.b_scaled == pytest.approx(-0.3, rel=1e-10)  # undefined scaling: raw slope


def test_idempotence():
    fit = fit_power_law(synthetic_curve(0.2, 0.005, -0.69))
    Ts = np.geomspace(0.001, 0.3, 50)
    slope = fit.b_scaled * (0.2 - 0.5)
    refit = fit_power_law(synthetic_curve(0.2, fit.a, slope, Ts))
    assert refit.a == pytest.approx(fit.a, rel=1e-12)
    assert refit.b_scaled == pytest.approx(fit.b_scaled, rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(lam=st.floats(min_value=1e-3, max_value=1e3))
def test_scale_consistency(lam):
    base = synthetic_curve(0.3, 0.004, -0.46)
    scaled = SkewCurve(H=0.3, points=tuple((T, lam * s) for T, s in base.points))
    f0, f1 = fit_power_law(base), fit_power_law(scaled)
    assert f1.a == pytest.approx(lam * f0.a, rel=1e-9)
    assert f1.b_scaled == pytest.approx(f0.b_scaled, rel=1e-9, abs=1e-12)


def test_fit_power_law_validation():
    with pytest.raises(ValidationError):
        fit_power_law(synthetic_curve(0.2, 0.01, -0.5, Ts=[0.01, 0.02, 0.05, 0.1]))
    bad = SkewCurve(H=0.2, points=((0.01, 1.0), (0.02, -0.1), (0.05, 0.5), (0.1, 0.2), (0.2, 0.1)))
    with pytest.raises(ValidationError):
        fit_power_law(bad)


def test_power_law_fit_type_validation():
    with pytest.raises(ValidationError):
        PowerLawFit(a=-1.0, b_scaled=2.0, rss=0.0, H=0.2)
    with pytest.raises(ValidationError):
        PowerLawFit(a=1.0, b_scaled=2.0, rss=-1e-3, H=0.2)


# ------------------------------------------------------------- fit_a_of_H


def test_a_of_H_exact_round_trip():
    c0_true, c1_true = -2.42651, -12.5927
    fits = [
        PowerLawFit(a=math.exp(c0_true + c1_true * H), b_scaled=2.3, rss=0.0, H=H)
        for H in (0.1, 0.3, 0.5)
    ]
    c0, c1 = fit_a_of_H(fits)
    assert c0 == pytest.approx(c0_true, rel=1e-10)
    assert c1 == pytest.approx(c1_true, rel=1e-10)


def test_a_of_H_reference_table_band():
    fits = [PowerLawFit(a=a, b_scaled=2.3, rss=0.0, H=H) for H, a in A_TABLE.items()]
    _, c1 = fit_a_of_H(fits)
    assert -15.0 <= c1 <= -10.0


def test_a_of_H_needs_three_distinct():
    fits = [
        PowerLawFit(a=0.01, b_scaled=2.3, rss=0.0, H=0.1),
        PowerLawFit(a=0.02, b_scaled=2.3, rss=0.0, H=0.1),
    ]
    with pytest.raises(ValidationError):
        fit_a_of_H(fits)


# ----------------------------------------------------- fit_shared_exponent


def test_shared_exponent_exact_recovery():
    b_true = 2.3
    curves = [
        synthetic_curve(H, a, b_true * (H - 0.5))
        for H, a in [(0.1, 0.025), (0.2, 0.008), (0.3, 0.001)]
    ]
    b, a_per_H = fit_shared_exponent(curves)
    assert b == pytest.approx(b_true, rel=1e-10)
    for (H, a), (H_ref, a_ref) in zip(a_per_H, [(0.1, 0.025), (0.2, 0.008), (0.3, 0.001)]):
        assert H == H_ref
        assert a == pytest.approx(a_ref, rel=1e-10)


def test_shared_exponent_validation():
    with pytest.raises(ValidationError):
        fit_shared_exponent([synthetic_curve(0.1, 0.02, -0.9)])
    with pytest.raises(ValidationError):
        fit_shared_exponent(
            [synthetic_curve(0.1, 0.02, -0.9), synthetic_curve(0.5, 0.01, -0.1)]
        )


def test_pooled_exponent_reference_band(curve_set):
    # pooled slope scale over the computed curves, H != 1/2
    curves = [curve_set[H] for H in (0.1, 0.2, 0.3, 0.4, 0.47)]
    b, _ = fit_shared_exponent(curves)
    assert 2.1 <= b <= 2.5, f"pooled b = {b:.4g}"
