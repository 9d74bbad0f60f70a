"""Markovian rough-volatility model: closed-form skew asymptotics, power-law
fits, path simulation, and FFT pricing of forward-start calls."""

from .charfn import (
    CFExponents,
    ModelParams,
    bs_cf,
    cf_exponents,
    exponent_A_forward,
    exponent_A_vanilla,
    market_price_m,
    phi_im_shifted,
    riccati_ode,
    riccati_series,
)
from .errors import NumericalError, ValidationError
from .fit import PowerLawFit, fit_a_of_H, fit_power_law, fit_shared_exponent
from .kernels import HurstParams, hurst_constants, nu, theta_of_t
from .pricing import (
    FftGrid,
    FwdStartSpec,
    bs_call,
    bs_forward_start,
    carr_madan_forward_call,
    mc_forward_cf,
)
from .sim import (
    ConstZeta,
    LinearZeta,
    PathSet,
    check_h_invariant,
    drift_ode_path,
    mc_martingale_stat,
    path_table,
    power_graded_grid,
    simulate_q,
)
from .skew import (
    QuadratureConfig,
    SkewCurve,
    atm_skew,
    atm_skew_forward,
    atm_skew_upper_bound,
    exp_integral_e1,
    skew_curve,
)

__version__ = "0.1.0"

__all__ = [
    "CFExponents",
    "ConstZeta",
    "FftGrid",
    "FwdStartSpec",
    "HurstParams",
    "LinearZeta",
    "ModelParams",
    "NumericalError",
    "PathSet",
    "PowerLawFit",
    "QuadratureConfig",
    "SkewCurve",
    "ValidationError",
    "atm_skew",
    "atm_skew_forward",
    "atm_skew_upper_bound",
    "bs_call",
    "bs_cf",
    "bs_forward_start",
    "carr_madan_forward_call",
    "cf_exponents",
    "check_h_invariant",
    "drift_ode_path",
    "exp_integral_e1",
    "exponent_A_forward",
    "exponent_A_vanilla",
    "fit_a_of_H",
    "fit_power_law",
    "fit_shared_exponent",
    "hurst_constants",
    "market_price_m",
    "mc_forward_cf",
    "mc_martingale_stat",
    "nu",
    "path_table",
    "phi_im_shifted",
    "power_graded_grid",
    "riccati_ode",
    "riccati_series",
    "simulate_q",
    "skew_curve",
    "theta_of_t",
]
