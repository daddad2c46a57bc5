"""
Election analysis pipeline

reference stats (suspect regions excluded) → normalize suspect indicators →
ratio series → sort → rejection sweep → interval probabilities.
"""

import logging
import math
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .cauchy import location_interval_prob
from .config import AnalysisSettings
from .errors import DegenerateReferenceError, DomainError, EstimationError, InsufficientDataError, stage
from .estimator import quantile_oracle, rejection_sweep
from .models import (
    MIN_FIT_SIZE,
    AnalysisReport,
    ConstituencyRecord,
    DataFlag,
    HistogramBin,
    IndicatorStats,
    IntervalProbability,
    NormalizedPoint,
    RatioSeries,
    ReferenceStats,
)

logger = logging.getLogger(__name__)


DEFAULT_REJECTION_LEVELS = (1, 3, 7, 9)

FLAG_TURNOUT_OVERFLOW = "turnout>100%"
FLAG_DEGENERATE_DENOMINATOR = "degenerate denominator"


# ============================================
# REFERENCE STATISTICS
# ============================================

def _indicator_stats(values: np.ndarray, ddof: int) -> IndicatorStats:
    variance = float(np.var(values, ddof=ddof))
    return IndicatorStats(mean=float(np.mean(values)), variance=variance, sigma=math.sqrt(variance))


def compute_reference_stats(
    records: Sequence[ConstituencyRecord],
    excluded_regions: Iterable[str] = (),
    settings: Optional[AnalysisSettings] = None,
) -> ReferenceStats:
    """
    Unweighted mean and variance of turnout % and against-all % over
    every record outside the excluded regions.
    """
    settings = settings or AnalysisSettings()
    excluded = tuple(sorted(set(excluded_regions)))
    used = [r for r in records if r.region not in excluded]
    if len(used) < 2:
        raise InsufficientDataError(
            f"reference needs at least 2 records outside {list(excluded)}, got {len(used)}"
        )

    turnout = np.array([r.turnout_pct for r in used], dtype=float)
    against = np.array([r.against_all_pct(settings.against_all_basis) for r in used], dtype=float)

    stats = ReferenceStats(
        turnout=_indicator_stats(turnout, settings.variance_ddof),
        against_all=_indicator_stats(against, settings.variance_ddof),
        excluded_regions=excluded,
        n_used=len(used),
        variance_ddof=settings.variance_ddof,
    )
    logger.debug(
        "reference over %d records: turnout %.3f±%.3f, against-all %.3f±%.3f",
        stats.n_used, stats.turnout.mean, stats.turnout.sigma,
        stats.against_all.mean, stats.against_all.sigma,
    )
    return stats


# ============================================
# NORMALIZATION & RATIOS
# ============================================

def normalize_indicator(value: float, stats: IndicatorStats) -> float:
    """(value - mean) / sigma"""
    if not stats.sigma > 0:
        raise DegenerateReferenceError(
            f"reference sigma is {stats.sigma}; indicator with mean {stats.mean} cannot be normalized"
        )
    return (value - stats.mean) / stats.sigma


def ratio_series(
    records: Sequence[ConstituencyRecord],
    stats: ReferenceStats,
    settings: Optional[AnalysisSettings] = None,
) -> RatioSeries:
    """
    x_i = z(turnout_i) / z(against_all_i), one per record in input order.

    Records whose normalized against-all share is within the degenerate
    tolerance of zero are flagged and left out of the ratio values.
    """
    settings = settings or AnalysisSettings()
    if not records:
        raise InsufficientDataError("no records to build a ratio series from")

    values: List[float] = []
    points: List[NormalizedPoint] = []
    flags: List[DataFlag] = []

    for r in records:
        z_t = normalize_indicator(r.turnout_pct, stats.turnout)
        z_a = normalize_indicator(r.against_all_pct(settings.against_all_basis), stats.against_all)

        if abs(z_a) < settings.degenerate_tolerance:
            flags.append(DataFlag(
                code=FLAG_DEGENERATE_DENOMINATOR,
                detail=f"normalized against-all share {z_a:.3g} is zero; excluded from the ratio sample",
                region=r.region,
                constituency_id=r.constituency_id,
            ))
            points.append(NormalizedPoint(r.region, r.constituency_id, z_t, z_a, None))
            continue

        ratio = z_t / z_a
        values.append(ratio)
        points.append(NormalizedPoint(r.region, r.constituency_id, z_t, z_a, ratio))

    if not values:
        raise InsufficientDataError("every ratio denominator is degenerate; ratio series is empty")
    if flags:
        logger.warning("%d of %d records excluded for a degenerate denominator", len(flags), len(records))
    return RatioSeries(values=values, points=points, flags=flags)


def overflow_flags(records: Iterable[ConstituencyRecord]) -> List[DataFlag]:
    """One flag per record with more ballots than registered voters"""
    return [
        DataFlag(
            code=FLAG_TURNOUT_OVERFLOW,
            detail=f"turnout {r.turnout_pct:.2f}% exceeds 100%",
            region=r.region,
            constituency_id=r.constituency_id,
        )
        for r in records
        if r.turnout_overflow
    ]


# ============================================
# FULL ANALYSIS
# ============================================

def _check_regions(records: Sequence[ConstituencyRecord], suspect: Tuple[str, ...]) -> None:
    if not suspect:
        raise InsufficientDataError("suspect region set is empty")
    known = sorted({r.region for r in records})
    missing = [s for s in suspect if s not in known]
    if missing:
        raise InsufficientDataError(
            f"unknown suspect region(s) {missing}; known regions: {', '.join(known)}"
        )


def interval_probabilities(
    sample_mean: float,
    prob_intervals: Sequence[Tuple[float, float]],
    scales: Sequence[float],
) -> List[IntervalProbability]:
    """Every (interval, scale) pair, intervals outermost"""
    return [
        IntervalProbability(lo, hi, scale, location_interval_prob(lo, hi, sample_mean, scale))
        for lo, hi in prob_intervals
        for scale in scales
    ]


def analyze(
    records: Sequence[ConstituencyRecord],
    excluded_regions: Optional[Iterable[str]],
    suspect_regions: Iterable[str],
    rejection_levels: Sequence[int] = DEFAULT_REJECTION_LEVELS,
    prob_intervals: Sequence[Tuple[float, float]] = (),
    scales: Sequence[float] = (1.0,),
    settings: Optional[AnalysisSettings] = None,
) -> AnalysisReport:
    """
    Run the whole method on one suspect set.

    ``excluded_regions=None`` excludes the suspect regions from the
    reference statistics. Deterministic for identical inputs.
    """
    settings = settings or AnalysisSettings()
    suspect = tuple(dict.fromkeys(suspect_regions))
    with stage("validation"):
        _check_regions(records, suspect)
    excluded = suspect if excluded_regions is None else tuple(excluded_regions)

    with stage("reference"):
        reference = compute_reference_stats(records, excluded, settings)

    suspect_records = [r for r in records if r.region in suspect]
    with stage("ratios"):
        series = ratio_series(suspect_records, reference, settings)

    ordered = sorted(series.values)
    with stage("sweep"):
        sweep = rejection_sweep(ordered, rejection_levels, max_workers=settings.max_workers)

    sample_mean = float(np.mean(series.values))
    with stage("probabilities"):
        probabilities = interval_probabilities(sample_mean, prob_intervals, scales)

    oracle = None
    if len(ordered) >= MIN_FIT_SIZE:
        try:
            oracle = quantile_oracle(ordered)
        except EstimationError as e:
            logger.warning("quantile oracle unavailable: %s", e)

    flags = overflow_flags(records) + series.flags
    for f in flags:
        if f.code == FLAG_TURNOUT_OVERFLOW:
            logger.warning("%s/%s: %s", f.region, f.constituency_id, f.detail)

    return AnalysisReport(
        reference=reference,
        suspect_regions=list(suspect),
        ratios=list(series.values),
        sweep=sweep,
        sample_mean=sample_mean,
        probabilities=probabilities,
        oracle=oracle,
        normalized=series.points,
        flags=flags,
    )


# ============================================
# HISTOGRAM
# ============================================

def turnout_histogram(
    records: Sequence[ConstituencyRecord],
    bin_width: float,
    dense: bool = False,
) -> List[HistogramBin]:
    """
    Left-closed bins of turnout % from 0; records with more ballots than
    voters go to an open-ended overflow bin starting at 100.

    Only non-empty bins are returned unless ``dense`` is set, in which
    case every regular bin from 0 to the highest non-empty one is listed.
    """
    if not bin_width > 0:
        raise DomainError(f"bin width must be > 0, got {bin_width}")
    if not records:
        return []

    # quotients and edges are rounded so 57.3 / 0.1 lands in bin 573
    last_regular = max(int(math.ceil(round(100.0 / bin_width, 9))) - 1, 0)
    counts = {}
    overflow = 0
    for r in records:
        if r.turnout_overflow:
            overflow += 1
            continue
        # exactly 100 % closes the last regular bin
        idx = min(int(math.floor(round(r.turnout_pct / bin_width, 9))), last_regular)
        counts[idx] = counts.get(idx, 0) + 1

    indices = sorted(counts)
    if dense and indices:
        indices = list(range(0, indices[-1] + 1))

    bins = [
        HistogramBin(
            low=round(i * bin_width, 9),
            high=min(round((i + 1) * bin_width, 9), 100.0) if i == last_regular else round((i + 1) * bin_width, 9),
            count=counts.get(i, 0),
        )
        for i in indices
    ]
    if overflow:
        bins.append(HistogramBin(low=100.0, high=None, count=overflow))
    return bins
