"""
Configuration models and key=value config files

Config files are plain ``key=value`` lines (``#`` comments allowed), read
with python-dotenv without touching the process environment. List values
are comma-separated.
"""

import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional, Tuple, Type, TypeVar, Union

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .errors import ConfigError

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)


class FraudMode(str, Enum):
    NONE = "none"
    STUFFING = "stuffing"
    TURNOUT_SHIFT = "turnout_shift"


class _Settings(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    @field_validator("*", mode="before")
    @classmethod
    def _split_lists(cls, value: Any, info) -> Any:
        # "1,3,7,9" from a config file → ["1", "3", "7", "9"]
        annotation = cls.model_fields[info.field_name].annotation
        if isinstance(value, str) and getattr(annotation, "__origin__", None) in (list, tuple):
            return [part.strip() for part in value.split(",") if part.strip()]
        return value


class AnalysisSettings(_Settings):
    """Conventions of the election pipeline"""
    variance_ddof: int = Field(1, ge=0, le=1, description="1 = n-1 divisor (sample variance), 0 = n")
    against_all_basis: Literal["ballots_cast", "registered_voters"] = "ballots_cast"
    degenerate_tolerance: float = Field(1e-9, gt=0)
    max_workers: Optional[int] = Field(None, ge=1)


class ScenarioConfig(_Settings):
    """Synthetic election scenario for the fraud simulator"""
    n_reference: int = Field(190, ge=2)
    n_suspect: int = Field(35, ge=2)
    reference_region: str = "Reference"
    suspect_region: str = "Suspect"

    # defaults: non-suspect 2004 first-round reference values
    turnout_mean: float = 74.502
    turnout_sigma: float = Field(6.810, gt=0)
    against_all_mean: float = 2.027
    against_all_sigma: float = Field(1.363, gt=0)
    invalid_mean: float = Field(1.5, ge=0)
    registered_voters_range: Tuple[int, int] = (120_000, 200_000)

    fraud_mode: FraudMode = FraudMode.NONE
    fraud_magnitude: float = Field(0.0, ge=0)
    seed: int = Field(20041031, ge=0, lt=2**64)

    # power-study detection convention
    rejection_levels: List[int] = Field(default_factory=lambda: [1, 3, 7, 9])
    detection_interval: Tuple[float, float] = (-0.1, 0.1)
    detection_threshold: float = Field(0.05, gt=0, lt=1)
    detection_scale: float = Field(1.0, gt=0)
    detection_center: Literal["median", "sample_mean", "arctan"] = "median"

    @field_validator("registered_voters_range")
    @classmethod
    def _check_voter_range(cls, value: Tuple[int, int]) -> Tuple[int, int]:
        lo, hi = value
        if lo < 1 or hi < lo:
            raise ValueError(f"registered_voters_range must satisfy 1 <= lo <= hi, got {value}")
        return value

    @field_validator("rejection_levels")
    @classmethod
    def _check_levels(cls, value: List[int]) -> List[int]:
        if not value or any(k < 0 for k in value):
            raise ValueError("rejection_levels must be a non-empty list of counts >= 0")
        return value

    @model_validator(mode="after")
    def _check_interval(self) -> "ScenarioConfig":
        lo, hi = self.detection_interval
        if not lo < hi:
            raise ValueError(f"detection_interval must satisfy lo < hi, got {self.detection_interval}")
        return self


# ============================================
# LOADING
# ============================================

def read_key_values(path: Union[str, Path]) -> Dict[str, str]:
    """Read a key=value file; missing file is a ConfigError"""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    values = dotenv_values(path)
    return {k.strip().lower(): v for k, v in values.items() if v is not None}


def build_config(
    model: Type[M],
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> M:
    """File values first, then non-None overrides; unknown keys are rejected"""
    data: Dict[str, Any] = dict(read_key_values(path)) if path else {}
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value

    unknown = sorted(set(data) - set(model.model_fields))
    if unknown:
        raise ConfigError(f"unknown config key '{unknown[0]}' for {model.__name__}", key=unknown[0])

    try:
        config = model(**data)
    except ValidationError as e:
        err = e.errors()[0]
        key = str(err["loc"][0]) if err.get("loc") else None
        raise ConfigError(f"invalid value for '{key}': {err['msg']}", key=key) from e

    logger.debug("loaded %s from %s", model.__name__, path or "defaults")
    return config
