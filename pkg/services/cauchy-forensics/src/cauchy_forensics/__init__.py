"""
cauchy-forensics - election fraud forensics
Ratio of normalized indicators, arctangent regression, Cauchy plausibility
"""

__version__ = "1.0.0"

from .models import (
    CauchyParams,
    ConstituencyRecord,
    ReferenceStats,
    IndicatorStats,
    RatioSample,
    EstimateRow,
    IntervalProbability,
    AnalysisReport,
    HistogramBin,
    PowerRow,
)
from .cauchy import pdf, cdf, quantile, location_interval_prob
from .estimator import (
    plotting_positions,
    tangent_transform,
    reject_extremes,
    fit_arctan_regression,
    fit_residuals,
    rejection_sweep,
    quantile_oracle,
)
from .pipeline import (
    compute_reference_stats,
    normalize_indicator,
    ratio_series,
    analyze,
    turnout_histogram,
)
from .simulator import generate, power_study
from .config import AnalysisSettings, ScenarioConfig, FraudMode
from .errors import (
    ForensicsError,
    DomainError,
    InsufficientDataError,
    DegenerateReferenceError,
    EstimationError,
    ConfigError,
    SchemaError,
    RowError,
)

__all__ = [
    # Types
    "CauchyParams",
    "ConstituencyRecord",
    "ReferenceStats",
    "IndicatorStats",
    "RatioSample",
    "EstimateRow",
    "IntervalProbability",
    "AnalysisReport",
    "HistogramBin",
    "PowerRow",

    # Cauchy law
    "pdf",
    "cdf",
    "quantile",
    "location_interval_prob",

    # Estimation
    "plotting_positions",
    "tangent_transform",
    "reject_extremes",
    "fit_arctan_regression",
    "fit_residuals",
    "rejection_sweep",
    "quantile_oracle",

    # Pipeline
    "compute_reference_stats",
    "normalize_indicator",
    "ratio_series",
    "analyze",
    "turnout_histogram",

    # Simulation
    "generate",
    "power_study",

    # Config
    "AnalysisSettings",
    "ScenarioConfig",
    "FraudMode",

    # Errors
    "ForensicsError",
    "DomainError",
    "InsufficientDataError",
    "DegenerateReferenceError",
    "EstimationError",
    "ConfigError",
    "SchemaError",
    "RowError",
]
