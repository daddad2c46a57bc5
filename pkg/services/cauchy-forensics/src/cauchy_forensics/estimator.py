"""
Arctangent regression estimator of Cauchy parameters

The Cauchy CDF F(x) = 1/2 + (1/pi) arctan((x - alpha) / gamma) inverts to

    x = alpha + gamma * tan(pi * (F - 1/2))

so sorted sample values regressed on the tangent of their plotting
positions lie on a line with intercept alpha and slope gamma. Extreme
order statistics are rejected first because their tangents diverge.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from .errors import DomainError, EstimationError, ForensicsError, InsufficientDataError
from .models import MIN_FIT_SIZE, CauchyParams, EstimateRow, RatioSample

logger = logging.getLogger(__name__)


# ============================================
# PLOTTING POSITIONS
# ============================================

def plotting_positions(n: int) -> np.ndarray:
    """Weibull positions u_i = i / (n + 1), i = 1..n"""
    if n < 1:
        raise DomainError(f"plotting positions need n >= 1, got {n}")
    i = np.arange(1, n + 1, dtype=float)
    return i / (n + 1.0)


def tangent_transform(u: Sequence[float]) -> np.ndarray:
    """t_i = tan(pi * (u_i - 1/2)); poles at u = 0 and u = 1"""
    arr = np.asarray(u, dtype=float)
    if np.any(~((arr > 0.0) & (arr < 1.0))):
        raise DomainError("tangent transform needs every u strictly inside (0, 1)")
    return np.tan(math.pi * (arr - 0.5))


# ============================================
# TRIMMING
# ============================================

def split_rejection(total_to_reject: int) -> tuple:
    """(low, high): odd counts drop the extra point from the high end"""
    high = (total_to_reject + 1) // 2
    return total_to_reject - high, high


def reject_extremes(sorted_values: Sequence[float], total_to_reject: int) -> RatioSample:
    """Drop floor(k/2) smallest and ceil(k/2) largest order statistics"""
    values = [float(v) for v in sorted_values]
    if total_to_reject < 0:
        raise DomainError(f"rejection count must be >= 0, got {total_to_reject}")
    if len(values) - total_to_reject < MIN_FIT_SIZE:
        raise InsufficientDataError(
            f"rejecting {total_to_reject} of {len(values)} values leaves fewer than {MIN_FIT_SIZE}"
        )

    low, high = split_rejection(total_to_reject)
    return RatioSample(
        values=tuple(values[low:len(values) - high]),
        original_size=len(values),
        rejected_low=low,
        rejected_high=high,
    )


# ============================================
# REGRESSION
# ============================================

def _design(s: RatioSample) -> np.ndarray:
    """Tangents of the surviving points at their original positions"""
    u = plotting_positions(s.original_size)
    return tangent_transform(u[s.rejected_low:s.original_size - s.rejected_high])


def fit_arctan_regression(s: RatioSample) -> CauchyParams:
    """Ordinary least squares of x_i on t_i: slope gamma, intercept alpha"""
    x = np.asarray(s.values, dtype=float)
    t = _design(s)

    t_bar = t.mean()
    x_bar = x.mean()
    dt = t - t_bar
    sxx = float(np.dot(dt, dt))
    if sxx == 0.0:
        raise EstimationError("degenerate design: all tangent positions are identical")

    gamma_hat = float(np.dot(dt, x - x_bar)) / sxx
    if not gamma_hat > 0.0:
        raise EstimationError(
            f"non-positive scale estimate {gamma_hat:.6g}; sample is not Cauchy-like or over-trimmed"
        )
    alpha_hat = float(x_bar - gamma_hat * t_bar)
    return CauchyParams(location=alpha_hat, scale=gamma_hat)


def fit_residuals(s: RatioSample, params: CauchyParams) -> float:
    """Residual sum of squares of the sample around the fitted line"""
    x = np.asarray(s.values, dtype=float)
    resid = x - (params.location + params.scale * _design(s))
    return float(np.dot(resid, resid))


def _estimate_level(sorted_values: List[float], level: int) -> EstimateRow:
    try:
        sample = reject_extremes(sorted_values, level)
        params = fit_arctan_regression(sample)
    except EstimationError as e:
        raise EstimationError(str(e), level=level) from e
    except ForensicsError as e:
        e.args = (f"rejection level {level}: {e}",)
        raise

    rss = fit_residuals(sample, params)
    logger.debug(
        "level=%d n=%d alpha=%.6f gamma=%.6f rss=%.6g",
        level, sample.n, params.location, params.scale, rss,
    )
    return EstimateRow(
        rejected_total=level,
        location_hat=params.location,
        scale_hat=params.scale,
        rss=rss,
    )


def rejection_sweep(
    sorted_values: Sequence[float],
    rejection_levels: Sequence[int],
    max_workers: Optional[int] = None,
) -> List[EstimateRow]:
    """
    One EstimateRow per rejection level, in input order.

    Levels are independent; with max_workers > 1 they are evaluated on a
    thread pool and reassembled in input order.
    """
    values = sorted(float(v) for v in sorted_values)
    levels = [int(k) for k in rejection_levels]

    if max_workers and max_workers > 1 and len(levels) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(lambda k: _estimate_level(values, k), levels))
    return [_estimate_level(values, k) for k in levels]


# ============================================
# QUANTILE ORACLE
# ============================================

def quantile_oracle(sorted_values: Sequence[float]) -> CauchyParams:
    """Median for alpha and half the interquartile range for gamma"""
    x = np.sort(np.asarray(sorted_values, dtype=float))
    if x.size < MIN_FIT_SIZE:
        raise InsufficientDataError(f"quantile oracle needs at least {MIN_FIT_SIZE} values, got {x.size}")

    # weibull interpolation matches the i/(n+1) plotting positions
    q1, median, q3 = np.quantile(x, [0.25, 0.5, 0.75], method="weibull")
    half_iqr = float(q3 - q1) / 2.0
    if not half_iqr > 0.0:
        raise EstimationError("interquartile range is zero")
    return CauchyParams(location=float(median), scale=half_iqr)
