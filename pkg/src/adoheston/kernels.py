"""Fractional-kernel constants and the time-dependent vol-of-vol kernel ν(t).

The model replaces a fractional Brownian driver with a Gaussian Markov
semimartingale whose kernel is t^{H−1/2} up to the constant B_H.  Everything
downstream (characteristic function, skew asymptotics, simulation) consumes
the derived constants through :class:`HurstParams`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = ["HurstParams", "hurst_constants", "nu", "theta_of_t"]


@dataclass(frozen=True)
class HurstParams:
    """Hurst exponent H ∈ (0,1) and the constants derived from it.

    alpha_H:  covariance scale  √(Γ(2H+1)Γ(3−2H)) · sin²(πH)
    c_H:      α_H / (2H · Γ(3/2−H) · Γ(H+1/2))
    B_H:      diffusion scale of ν(t) = B_H t^{H−1/2};  B_{1/2} = 1
    psi_coef: coefficient of t^{2H−1} in the variance kernel,
              Γ(3−2H) / (c_H · Γ²(3/2−H))
    """

    H: float
    alpha_H: float
    c_H: float
    B_H: float
    psi_coef: float


def hurst_constants(H: float) -> HurstParams:
    """Evaluate all kernel constants for a Hurst exponent H ∈ (0,1).

    The open interval is enforced: at the endpoints B_H and ν degenerate
    (csc⁴(πH) blows up), so they are domain errors rather than limits.
    """
    H = float(H)
    if not 0.0 < H < 1.0:
        raise ValidationError(f"H must lie in the open interval (0, 1), got {H}")
    g = math.gamma
    alpha_H = math.sqrt(g(2 * H + 1) * g(3 - 2 * H)) * math.sin(math.pi * H) ** 2
    c_H = alpha_H / (2 * H * g(1.5 - H) * g(H + 0.5))
    B_H = 2 ** (3 - 4 * H) * math.sin(math.pi * H) ** -4 * g(2 - H) / (g(1.5 - H) ** 2 * g(H))
    psi_coef = g(3 - 2 * H) / (c_H * g(1.5 - H) ** 2)
    return HurstParams(H=H, alpha_H=alpha_H, c_H=c_H, B_H=B_H, psi_coef=psi_coef)


def nu(t, hp: HurstParams):
    """Vol-of-vol kernel ν(t) = B_H · t^{H−1/2}.

    Accepts scalars or arrays.  t must be positive; t = 0 is allowed only
    for H ≥ 1/2 where the kernel has a finite limit (1 for H = 1/2, 0 above).
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValidationError("nu(t): t must be nonnegative")
    if hp.H < 0.5 and np.any(t_arr == 0):
        raise ValidationError("nu(t): t = 0 is singular for H < 1/2")
    out = hp.B_H * t_arr ** (hp.H - 0.5)
    return out if out.ndim else float(out)


def theta_of_t(t, hp: HurstParams, xi: float, kappa: float):
    """Implied mean-reversion level θ(t) = ξ²ν(t)²/(4κ)."""
    if kappa <= 0:
        raise ValidationError("theta_of_t: kappa must be positive")
    if xi < 0:
        raise ValidationError("theta_of_t: xi must be nonnegative")
    if xi == 0:
        t_arr = np.asarray(t, dtype=float)
        return np.zeros_like(t_arr) if t_arr.ndim else 0.0
    n = nu(t, hp)
    return xi * xi * n * n / (4.0 * kappa)
