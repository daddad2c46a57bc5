"""
Synthetic elections with controllable fraud

Reference and suspect constituencies draw turnout % and against-all %
from independent normals. Fraud is injected into the suspect set only:

- turnout_shift: ballots are added until turnout rises by
  ``fraud_magnitude`` turnout sigmas
- stuffing: ``fraud_magnitude`` x registered voters extra ballots

Added ballots are credited to a synthetic leader, so both modes dilute
the against-all share of ballots cast. All randomness flows from one
numpy Generator seeded from the config.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .cauchy import location_interval_prob
from .config import FraudMode, ScenarioConfig
from .errors import DomainError, ForensicsError
from .estimator import quantile_oracle
from .models import ConstituencyRecord, DataFlag, PowerRow
from .pipeline import analyze

logger = logging.getLogger(__name__)


PCT_FLOOR = 0.1
PCT_CEIL = 99.9

LEADER = "leader"
OTHERS = "others"

FLAG_CLAMPED = "clamped draw"


# ============================================
# GENERATION
# ============================================

def _clamp(values: np.ndarray, label: str, region: str, flags: List[DataFlag]) -> np.ndarray:
    clipped = np.clip(values, PCT_FLOOR, PCT_CEIL)
    hits = int(np.count_nonzero(clipped != values))
    if hits:
        flags.append(DataFlag(
            code=FLAG_CLAMPED,
            detail=f"{hits} {label} draw(s) clamped to [{PCT_FLOOR}, {PCT_CEIL}]%",
            region=region,
        ))
    return clipped


def _region_records(
    rng: np.random.Generator,
    config: ScenarioConfig,
    region: str,
    n: int,
    fraud: bool,
    flags: List[DataFlag],
) -> List[ConstituencyRecord]:
    lo, hi = config.registered_voters_range
    voters = rng.integers(lo, hi, size=n, endpoint=True)
    turnout = _clamp(rng.normal(config.turnout_mean, config.turnout_sigma, n), "turnout", region, flags)
    against = _clamp(
        rng.normal(config.against_all_mean, config.against_all_sigma, n), "against-all", region, flags
    )
    invalid = np.clip(rng.normal(config.invalid_mean, config.invalid_mean / 3.0 + 1e-12, n), 0.0, None)
    leader_share = rng.uniform(0.3, 0.6, n)

    records = []
    for i in range(n):
        v = int(voters[i])
        ballots = int(round(v * turnout[i] / 100.0))
        n_against = int(round(ballots * against[i] / 100.0))
        n_invalid = min(int(round(ballots * invalid[i] / 100.0)), ballots - n_against)
        valid = ballots - n_against - n_invalid
        leader = int(round(valid * leader_share[i]))
        candidates = {LEADER: leader, OTHERS: valid - leader}

        if fraud:
            extra = _extra_ballots(config, v)
            ballots += extra
            candidates[LEADER] += extra

        records.append(ConstituencyRecord(
            region=region,
            constituency_id=f"{region[:3].upper()}-{i + 1:03d}",
            registered_voters=v,
            ballots_cast=ballots,
            votes_against_all=n_against,
            invalid_ballots=n_invalid,
            candidate_votes=candidates,
        ))
    return records


def _extra_ballots(config: ScenarioConfig, voters: int) -> int:
    if config.fraud_mode == FraudMode.TURNOUT_SHIFT:
        return int(round(voters * config.fraud_magnitude * config.turnout_sigma / 100.0))
    if config.fraud_mode == FraudMode.STUFFING:
        return int(round(voters * config.fraud_magnitude))
    return 0


def generate_with_flags(config: ScenarioConfig) -> Tuple[List[ConstituencyRecord], List[DataFlag]]:
    """Records (reference first, then suspect) and clamping flags"""
    rng = np.random.default_rng(config.seed)
    flags: List[DataFlag] = []
    fraud = config.fraud_mode != FraudMode.NONE and config.fraud_magnitude > 0

    records = _region_records(rng, config, config.reference_region, config.n_reference, False, flags)
    records += _region_records(rng, config, config.suspect_region, config.n_suspect, fraud, flags)
    for f in flags:
        logger.warning("seed %d, %s: %s", config.seed, f.region, f.detail)
    return records, flags


def generate(config: ScenarioConfig) -> List[ConstituencyRecord]:
    """Deterministic per seed: same config, same records"""
    records, _ = generate_with_flags(config)
    return records


# ============================================
# POWER STUDY
# ============================================

def _detection_center(config: ScenarioConfig, report) -> float:
    if config.detection_center == "sample_mean":
        return report.sample_mean
    if config.detection_center == "arctan":
        return report.sweep[0].location_hat
    return quantile_oracle(report.ratios).location


def _run_seed(config: ScenarioConfig) -> Optional[Tuple[float, float]]:
    """(first-level alpha_hat, detection probability) or None on failure"""
    records = generate(config)
    lo, hi = config.detection_interval
    try:
        report = analyze(
            records,
            excluded_regions=None,
            suspect_regions=[config.suspect_region],
            rejection_levels=config.rejection_levels,
        )
        center = _detection_center(config, report)
    except ForensicsError as e:
        logger.warning("seed %d failed: %s", config.seed, e)
        return None

    prob = location_interval_prob(lo, hi, center, config.detection_scale)
    logger.debug("seed %d: alpha_hat=%.4f center=%.4f p=%.4f",
                 config.seed, report.sweep[0].location_hat, center, prob)
    return report.sweep[0].location_hat, prob


def power_study(
    base: ScenarioConfig,
    magnitudes: Sequence[float],
    n_seeds: int,
    max_workers: Optional[int] = None,
) -> List[PowerRow]:
    """
    Detection rate per fraud magnitude.

    Seeds base.seed .. base.seed + n_seeds - 1 are reused for every
    magnitude. A seed counts as detected when the probability mass of
    the location on the detection interval falls below the threshold.
    """
    if n_seeds < 1:
        raise DomainError(f"n_seeds must be >= 1, got {n_seeds}")

    rows = []
    for magnitude in magnitudes:
        configs = [
            base.model_copy(update={"fraud_magnitude": float(magnitude), "seed": base.seed + k})
            for k in range(n_seeds)
        ]
        if max_workers and max_workers > 1:
            with ThreadPoolExecutor(max_workers=max_workers) as pool:
                results = list(pool.map(_run_seed, configs))
        else:
            results = [_run_seed(c) for c in configs]

        ok = [r for r in results if r is not None]
        detected = sum(1 for _, p in ok if p < base.detection_threshold)
        rows.append(PowerRow(
            magnitude=float(magnitude),
            mean_location_hat=float(np.mean([a for a, _ in ok])) if ok else math.nan,
            detection_rate=detected / len(ok) if ok else math.nan,
            n_seeds=n_seeds,
            failures=len(results) - len(ok),
        ))
        logger.debug("magnitude %.3f: detection rate %.3f", magnitude, rows[-1].detection_rate)
    return rows
