"""
Cauchy distribution mathematics

Density, CDF, quantile and the interval probability for the location
parameter given an observed sample mean. All functions accept scalars
or numpy arrays for ``x`` / ``u`` and are pure.
"""

import math

import numpy as np

from .errors import DomainError
from .models import CauchyParams


def pdf(x, p: CauchyParams):
    """(1/pi) * gamma / ((x - alpha)^2 + gamma^2)"""
    d = np.asarray(x, dtype=float) - p.location
    out = p.scale / (math.pi * (d * d + p.scale * p.scale))
    return float(out) if np.ndim(out) == 0 else out


def cdf(x, p: CauchyParams):
    """1/2 + (1/pi) * arctan((x - alpha) / gamma)"""
    z = (np.asarray(x, dtype=float) - p.location) / p.scale
    out = 0.5 + np.arctan(z) / math.pi
    return float(out) if np.ndim(out) == 0 else out


def quantile(u, p: CauchyParams):
    """Inverse CDF: alpha + gamma * tan(pi * (u - 1/2))"""
    arr = np.asarray(u, dtype=float)
    if np.any(~((arr > 0.0) & (arr < 1.0))):
        raise DomainError("quantile level must lie strictly inside (0, 1)")
    out = p.location + p.scale * np.tan(math.pi * (arr - 0.5))
    return float(out) if np.ndim(out) == 0 else out


def location_interval_prob(lo: float, hi: float, sample_mean: float, scale: float) -> float:
    """
    Probability that the location parameter lies in [lo, hi].

    The sample mean of n Cauchy(alpha, gamma) draws is itself
    Cauchy(alpha, gamma), so with gamma known the location is
    distributed as Cauchy(sample_mean, gamma) around the observation.
    Equals cdf(hi) - cdf(lo) under {sample_mean, scale}.
    """
    if not lo < hi:
        raise DomainError(f"interval must satisfy lo < hi, got [{lo}, {hi}]")
    if not math.isfinite(sample_mean):
        raise DomainError(f"sample mean must be finite, got {sample_mean}")
    centered = CauchyParams(location=sample_mean, scale=scale)
    return cdf(hi, centered) - cdf(lo, centered)
