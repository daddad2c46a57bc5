"""
Data models for cauchy-forensics
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import DomainError, InsufficientDataError


# Minimum sample size accepted by the arctangent regression
MIN_FIT_SIZE = 4

# Decimal places used in every serialized report
REPORT_DECIMALS = 6


def _r(value: Optional[float]) -> Optional[float]:
    """Round for report output; -0.0 is folded into 0.0"""
    if value is None:
        return None
    return round(float(value), REPORT_DECIMALS) + 0.0


# ============================================
# DISTRIBUTION
# ============================================

@dataclass(frozen=True)
class CauchyParams:
    """Location (alpha) and scale (gamma) of a Cauchy law"""
    location: float
    scale: float

    def __post_init__(self):
        if not (math.isfinite(self.location) and math.isfinite(self.scale)):
            raise DomainError(
                f"Cauchy parameters must be finite (location={self.location}, scale={self.scale})"
            )
        if self.scale <= 0:
            raise DomainError(f"Cauchy scale must be > 0, got {self.scale}")

    def to_dict(self) -> dict:
        return {"location": _r(self.location), "scale": _r(self.scale)}


# ============================================
# ELECTION DATA
# ============================================

@dataclass(frozen=True)
class ConstituencyRecord:
    """One constituency's (or PEC's) raw election returns"""
    region: str
    constituency_id: str
    registered_voters: int
    ballots_cast: int
    votes_against_all: int
    invalid_ballots: int = 0
    candidate_votes: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("registered_voters", "ballots_cast", "votes_against_all", "invalid_ballots"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be non-negative")
        if self.registered_voters <= 0:
            raise DomainError("registered_voters must be > 0")
        if self.ballots_cast < self.votes_against_all + self.invalid_ballots:
            raise DomainError(
                "ballots_cast is smaller than votes_against_all + invalid_ballots "
                f"({self.ballots_cast} < {self.votes_against_all} + {self.invalid_ballots})"
            )

    @property
    def turnout_pct(self) -> float:
        """Ballots cast per registered voter, percent (may exceed 100)"""
        return 100.0 * self.ballots_cast / self.registered_voters

    def against_all_pct(self, basis: str = "ballots_cast") -> float:
        """Against-all share, percent of ballots cast or of registered voters"""
        if basis == "registered_voters":
            return 100.0 * self.votes_against_all / self.registered_voters
        if self.ballots_cast == 0:
            return 0.0
        return 100.0 * self.votes_against_all / self.ballots_cast

    @property
    def turnout_overflow(self) -> bool:
        return self.ballots_cast > self.registered_voters


@dataclass(frozen=True)
class DataFlag:
    """Data-quality warning attached to a record or to the run"""
    code: str
    detail: str
    region: str = ""
    constituency_id: str = ""

    def to_dict(self) -> dict:
        return {
            "code": self.code,
            "region": self.region,
            "constituency_id": self.constituency_id,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class IndicatorStats:
    """Mean / variance / sigma of one indicator over the reference population"""
    mean: float
    variance: float
    sigma: float

    def to_dict(self) -> dict:
        return {"mean": _r(self.mean), "variance": _r(self.variance), "sigma": _r(self.sigma)}


@dataclass(frozen=True)
class ReferenceStats:
    """Reference statistics of both indicators after region exclusion"""
    turnout: IndicatorStats
    against_all: IndicatorStats
    excluded_regions: Tuple[str, ...] = ()
    n_used: int = 0
    variance_ddof: int = 1

    def __post_init__(self):
        if self.n_used < 2:
            raise InsufficientDataError(f"reference needs at least 2 records, got {self.n_used}")

    def to_dict(self) -> dict:
        return {
            "turnout_pct": self.turnout.to_dict(),
            "against_all_pct": self.against_all.to_dict(),
            "excluded_regions": list(self.excluded_regions),
            "n_used": self.n_used,
            "variance_ddof": self.variance_ddof,
        }


# ============================================
# ESTIMATION
# ============================================

@dataclass(frozen=True)
class RatioSample:
    """Ascending ratio sample with trimming metadata"""
    values: Tuple[float, ...]
    original_size: int
    rejected_low: int = 0
    rejected_high: int = 0

    def __post_init__(self):
        if len(self.values) < MIN_FIT_SIZE:
            raise InsufficientDataError(
                f"ratio sample needs at least {MIN_FIT_SIZE} values after rejection, got {len(self.values)}"
            )
        if self.rejected_low + self.rejected_high >= self.original_size:
            raise InsufficientDataError("rejection removes the whole sample")
        if len(self.values) + self.rejected_low + self.rejected_high != self.original_size:
            raise DomainError("retained + rejected counts do not add up to the original size")
        if any(b < a for a, b in zip(self.values, self.values[1:])):
            raise DomainError("ratio sample values must be sorted ascending")

    @property
    def n(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class EstimateRow:
    """Arctangent regression estimates at one rejection level"""
    rejected_total: int
    location_hat: float
    scale_hat: float
    rss: float = 0.0

    def __post_init__(self):
        if self.scale_hat <= 0:
            raise DomainError(f"scale_hat must be > 0, got {self.scale_hat}")

    @property
    def params(self) -> CauchyParams:
        return CauchyParams(self.location_hat, self.scale_hat)

    def to_dict(self) -> dict:
        return {
            "rejected_total": self.rejected_total,
            "location_hat": _r(self.location_hat),
            "scale_hat": _r(self.scale_hat),
            "rss": _r(self.rss),
            # distance from the null law Cauchy(0, 1)
            "deviation": {
                "location": _r(self.location_hat),
                "scale": _r(self.scale_hat - 1.0),
            },
        }


@dataclass(frozen=True)
class IntervalProbability:
    """P{alpha in [lo, hi]} for one scale"""
    lo: float
    hi: float
    scale: float
    probability: float

    def to_dict(self) -> dict:
        return {
            "interval": [_r(self.lo), _r(self.hi)],
            "scale": _r(self.scale),
            "probability": _r(self.probability),
        }


@dataclass(frozen=True)
class NormalizedPoint:
    """Normalized indicators of one suspect constituency and their ratio"""
    region: str
    constituency_id: str
    z_turnout: float
    z_against_all: float
    ratio: Optional[float]

    def to_dict(self) -> dict:
        return {
            "region": self.region,
            "constituency_id": self.constituency_id,
            "z_turnout": _r(self.z_turnout),
            "z_against_all": _r(self.z_against_all),
            "ratio": _r(self.ratio),
        }


@dataclass
class AnalysisReport:
    """Complete analysis of one suspect set"""
    reference: ReferenceStats
    suspect_regions: List[str]
    ratios: List[float]
    sweep: List[EstimateRow]
    sample_mean: float
    probabilities: List[IntervalProbability]
    oracle: Optional[CauchyParams] = None
    normalized: List[NormalizedPoint] = field(default_factory=list)
    flags: List[DataFlag] = field(default_factory=list)

    def to_dict(self) -> dict:
        """Stable key layout; every float rounded to six decimals"""
        ordered = sorted(self.ratios)
        return {
            "reference": self.reference.to_dict(),
            "ratios": {
                "suspect_regions": list(self.suspect_regions),
                "n": len(ordered),
                "values": [_r(v) for v in ordered],
                "normalized": [p.to_dict() for p in self.normalized],
            },
            "sweep": [row.to_dict() for row in self.sweep],
            "sample_mean": _r(self.sample_mean),
            "oracle": self.oracle.to_dict() if self.oracle else None,
            "probabilities": [p.to_dict() for p in self.probabilities],
            "flags": [f.to_dict() for f in self.flags],
        }


# ============================================
# POWER STUDY
# ============================================

@dataclass(frozen=True)
class PowerRow:
    """Detection rate of one fraud magnitude across seeds"""
    magnitude: float
    mean_location_hat: float
    detection_rate: float
    n_seeds: int
    failures: int = 0

    def to_dict(self) -> dict:
        return {
            "magnitude": _r(self.magnitude),
            "mean_location_hat": _r(self.mean_location_hat),
            "detection_rate": _r(self.detection_rate),
            "n_seeds": self.n_seeds,
            "failures": self.failures,
        }


# ============================================
# PIPELINE INTERMEDIATES
# ============================================

@dataclass
class RatioSeries:
    """Ratios in record order, with the points and flags behind them"""
    values: List[float]
    points: List[NormalizedPoint]
    flags: List[DataFlag] = field(default_factory=list)


@dataclass(frozen=True)
class HistogramBin:
    """Turnout bin [low, high); the overflow bin has high=None"""
    low: float
    high: Optional[float]
    count: int

    @property
    def overflow(self) -> bool:
        return self.high is None

    def to_dict(self) -> dict:
        return {"low": _r(self.low), "high": _r(self.high), "count": self.count}
