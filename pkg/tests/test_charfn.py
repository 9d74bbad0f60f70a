import math

import numpy as np
import pytest

from adoheston import (
    ModelParams,
    NumericalError,
    ValidationError,
    bs_cf,
    cf_exponents,
    exponent_A_forward,
    exponent_A_vanilla,
    hurst_constants,
    market_price_m,
    phi_im_shifted,
    riccati_ode,
    riccati_series,
)
from conftest import base_params


def test_model_params_validation():
    hp = hurst_constants(0.3)
    with pytest.raises(ValidationError):
        ModelParams(hp=hp, kappa=0.0)
    with pytest.raises(ValidationError):
        ModelParams(hp=hp, xi=-0.1)
    with pytest.raises(ValidationError):
        ModelParams(hp=hp, rho=1.5)
    with pytest.raises(ValidationError):
        ModelParams(hp=hp, I=0.0)
    with pytest.raises(ValidationError):
        ModelParams(hp=hp, F0=0.0)


def test_riccati_terminal_condition():
    mp = base_params(0.3)
    assert riccati_series(1.3, 1.0, 1.0, mp) == 0j
    assert abs(riccati_ode(1.3, 1.0, 1.0, mp)) < 1e-14


def test_riccati_series_vs_ode_small_window():
    # short-window agreement; the dedicated convergence-order check lives in
    # the acceptance suite
    for H in (0.1, 0.5):
        mp = base_params(H)
        b_series = riccati_series(1.0, 0.95, 1.0, mp)
        b_ode = riccati_ode(1.0, 0.95, 1.0, mp, n_steps=1024)
        assert abs(b_series - b_ode) / abs(b_ode) < 1e-2


def test_riccati_validation():
    mp = base_params(0.3)
    with pytest.raises(ValidationError):
        riccati_series(1.0, -0.1, 1.0, mp)
    with pytest.raises(ValidationError):
        riccati_series(1.0, 1.2, 1.0, mp)
    with pytest.raises(ValidationError):
        riccati_ode(1.0, 0.5, 1.0, mp, n_steps=8)


def test_zero_at_shifted_origin():
    # w = i/2 is the CF normalisation point phi(0) = 1: every exponent is 0
    mp = base_params(0.2)
    w0 = 0.5j
    assert exponent_A_vanilla(w0, 0.7, mp) == 0j
    assert exponent_A_forward(w0, 0.25, 1.0, mp) == 0j
    assert riccati_series(w0, 0.0, 0.7, mp) == 0j
    ce = cf_exponents(w0, 0.7, mp)
    assert ce.A_re == 0.0 and ce.A_im == 0.0
    assert abs(complex(ce.B_re, ce.B_im)) < 1e-14


def test_exponent_A_vanilla_bracket_modes():
    # the two published placements of the u-factor agree on the imaginary
    # part and differ in the real cross-term only
    mp = base_params(0.1)
    u = 1.7
    a_real_bracket = exponent_A_vanilla(u, 0.3, mp, u_in_real_bracket=True)
    a_imag_bracket = exponent_A_vanilla(u, 0.3, mp, u_in_real_bracket=False)
    assert a_real_bracket.imag == pytest.approx(a_imag_bracket.imag, rel=1e-14)
    assert a_real_bracket.real != a_imag_bracket.real


def test_market_price_m():
    mp = base_params(0.3, eps=0.1)
    assert market_price_m(0.05, mp) == 0.0  # below the cutoff
    assert market_price_m(0.5, mp) != 0.0
    mp0 = base_params(0.3, zeta=0.0)
    assert market_price_m(0.5, mp0) == 0.0
    with pytest.raises(ValidationError):
        market_price_m(0.5, base_params(0.3, xi=0.0))  # zeta != 0 needs xi > 0


def test_phi_im_shifted_shapes():
    mp = base_params(0.3)
    val = phi_im_shifted(0.7, 0.2, mp)
    assert isinstance(val, float)
    arr = phi_im_shifted(np.array([0.3, 0.7, 1.1]), 0.2, mp)
    assert arr.shape == (3,)
    assert arr[1] == pytest.approx(val, rel=1e-15)


def test_phi_im_decomposition():
    # Im[phi] = exp(A_re + v*B_re) * sin(A_im) with v = I^2 by default
    mp = base_params(0.2)
    u, T = 1.3, 0.15
    A = exponent_A_vanilla(u, T, mp)
    B = riccati_series(u, 0.0, T, mp)
    expected = math.exp(A.real + mp.I**2 * B.real) * math.sin(A.imag)
    assert phi_im_shifted(u, T, mp) == pytest.approx(expected, rel=1e-14)
    # decoupled variance argument
    expected2 = math.exp(A.real + 0.09 * B.real) * math.sin(A.imag)
    assert phi_im_shifted(u, T, mp, v=0.09) == pytest.approx(expected2, rel=1e-14)


def test_riccati_ode_overflow_guard():
    # imaginary frequency flips the sign of the source term: a genuine moment
    # explosion that must hit the guard, not return garbage
    mp = base_params(0.1, xi=2000.0)
    with pytest.raises(NumericalError):
        riccati_ode(3j, 0.1, 5.0, mp, n_steps=64)


def test_bs_cf_properties():
    tau, sigma = 0.8, 0.4
    u = np.array([0.0, 0.5, 2.0])
    vals = bs_cf(u, tau, 0.0, 0.0, sigma)
    ref = np.exp(-0.5 * sigma**2 * tau * (u**2 + 1j * u))
    np.testing.assert_allclose(vals, ref, rtol=1e-14)
    # martingale normalisation: cf(-i) = exp((r - delta) tau)
    r, delta = 0.03, 0.01
    assert bs_cf(np.array([-1j]), tau, r, delta, sigma)[0] == pytest.approx(
        math.exp((r - delta) * tau), rel=1e-12
    )
    with pytest.raises(ValidationError):
        bs_cf(u, -0.1, 0.0, 0.0, sigma)
    with pytest.raises(ValidationError):
        bs_cf(u, tau, 0.0, 0.0, -0.2)
