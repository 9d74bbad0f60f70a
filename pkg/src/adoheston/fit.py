"""Power-law regression of skew curves.

The short-maturity skew is summarised as S(T) ≈ a(H)·T^{b·(H−1/2)}: a
log-log line per Hurst exponent, a shared slope scale b across them, and an
exponential law a(H) = exp(c0 + c1·H) for the prefactor.  Everything here is
ordinary least squares in log space; determinism matters more than
statistical polish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .skew import SkewCurve

__all__ = ["PowerLawFit", "fit_power_law", "fit_a_of_H", "fit_shared_exponent"]


@dataclass(frozen=True)
class PowerLawFit:
    """Log-log line S ≈ a·T^{b_scaled·(H−1/2)} for one skew curve.

    b_scaled is the raw log-log slope divided by (H − 1/2); at H = 1/2 that
    scaling is undefined and b_scaled holds the raw slope itself.
    rss is the residual sum of squares in log space.
    """

    a: float
    b_scaled: float
    rss: float
    H: float

    def __post_init__(self):
        if self.a <= 0:
            raise ValidationError("PowerLawFit: a must be positive")
        if self.rss < 0:
            raise ValidationError("PowerLawFit: rss must be nonnegative")


def _loglog(curve: SkewCurve):
    T = curve.maturities
    S = curve.skews
    if len(T) < 5:
        raise ValidationError("fit_power_law: need at least 5 points")
    if np.any(S <= 0):
        raise ValidationError("fit_power_law: all skew values must be strictly positive")
    x = np.log(T)
    if np.ptp(x) == 0:
        raise ValidationError("fit_power_law: all maturities equal, regression is singular")
    return x, np.log(S)


def fit_power_law(curve: SkewCurve) -> PowerLawFit:
    """OLS of log S on log T: returns a = exp(intercept) and the scaled slope."""
    x, y = _loglog(curve)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    H = curve.H
    b_scaled = slope if H == 0.5 else slope / (H - 0.5)
    return PowerLawFit(
        a=float(math.exp(intercept)),
        b_scaled=float(b_scaled),
        rss=float(resid @ resid),
        H=float(H),
    )


def fit_a_of_H(fits) -> tuple:
    """Least squares of log a on H: log a = c1·H + c0, returned as (c0, c1)."""
    fits = list(fits)
    if len({f.H for f in fits}) < 3:
        raise ValidationError("fit_a_of_H: need fits at >= 3 distinct H values")
    Hs = np.array([f.H for f in fits])
    la = np.log([f.a for f in fits])
    c1, c0 = np.polyfit(Hs, la, 1)
    return float(c0), float(c1)


def fit_shared_exponent(curves) -> tuple:
    """Pooled slope scale across curves: b = Σ w_H·b_scaled(H) / Σ w_H.

    Two stages: each curve is fit on its own, then the scaled slopes are
    averaged with weights 1/rss (a perfect line dominates the pool), and the
    per-H prefactors are refit holding the shared b fixed.  Returns
    (b, [(H, a), ...]) in the input curve order.
    """
    curves = list(curves)
    if len(curves) < 2:
        raise ValidationError("fit_shared_exponent: need at least 2 curves")
    if any(c.H == 0.5 for c in curves):
        raise ValidationError("fit_shared_exponent: H = 1/2 has no scaled slope, exclude it")
    fits = [fit_power_law(c) for c in curves]
    weights = np.array([1.0 / max(f.rss, 1e-300) for f in fits])
    b = float(np.average([f.b_scaled for f in fits], weights=weights))
    a_per_H = []
    for c in curves:
        x, y = _loglog(c)
        intercept = float(np.mean(y - b * (c.H - 0.5) * x))
        a_per_H.append((c.H, math.exp(intercept)))
    return b, a_per_H
