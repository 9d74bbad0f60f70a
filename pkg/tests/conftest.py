import numpy as np
import pytest

from adoheston import ModelParams, QuadratureConfig, hurst_constants, skew_curve

H_GRID = (0.1, 0.2, 0.3, 0.4, 0.47, 0.5)

# prefactor table the regressions are compared against
A_TABLE = {0.1: 0.02498, 0.2: 0.00778, 0.3: 0.00098, 0.4: 0.00030, 0.47: 0.00020, 0.5: 0.00019}


def base_params(H: float, **overrides) -> ModelParams:
    """Reference parameter set: I=0.5, rho=0.7, xi=0.01, zeta=100, v0=I^2."""
    defaults = dict(
        kappa=1.0, xi=0.01, rho=0.7, zeta=100.0, I=0.5,
        eps=0.0, v0=0.25, V0=200.0, F0=1.0, r=0.0, delta=0.0,
    )
    defaults.update(overrides)
    return ModelParams(hp=hurst_constants(H), **defaults)


@pytest.fixture(scope="session")
def curve_set():
    """Skew curves for every H on 50 log-spaced maturities in [0.001, 0.3]."""
    Ts = np.geomspace(0.001, 0.3, 50)
    q = QuadratureConfig()
    return {H: skew_curve(Ts, base_params(H), q) for H in H_GRID}
