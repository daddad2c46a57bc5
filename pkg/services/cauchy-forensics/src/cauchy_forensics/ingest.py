"""
CSV ingestion and corpus writing

Input schema: header row with region, constituency_id, registered_voters,
ballots_cast, votes_against_all, invalid_ballots; any further column is a
candidate vote count. UTF-8, comma separated.
"""

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, ValidationError, field_validator

from .errors import DomainError, InputFileError, RowError, SchemaError
from .models import ConstituencyRecord

logger = logging.getLogger(__name__)


REQUIRED_COLUMNS = (
    "region",
    "constituency_id",
    "registered_voters",
    "ballots_cast",
    "votes_against_all",
    "invalid_ballots",
)
COUNT_COLUMNS = REQUIRED_COLUMNS[2:]


# "1234,0" is a decimal comma; "1,000" or "150,000" may be a thousands
# group or a decimal fraction, so it is rejected rather than guessed.
_DECIMAL_COMMA = re.compile(r"^\d+,0+$")
_COMMA_GROUPED = re.compile(r"^\d{1,3}(,\d{3})+$")


def _compact(raw: str) -> str:
    return raw.strip().replace("\u00a0", "").replace(" ", "")


def is_decimal_comma(raw: object) -> bool:
    if not isinstance(raw, str):
        return False
    text = _compact(raw)
    return bool(_DECIMAL_COMMA.match(text)) and not _COMMA_GROUPED.match(text)


def normalize_count(raw: object) -> object:
    """
    '12 345' → 12345, '1234,0' → 1234; anything non-integral is returned
    unchanged for the validator to reject.

    Raises:
        ValueError: comma-grouped count such as '1,000'
    """
    if not isinstance(raw, str):
        return raw
    text = _compact(raw)
    if text == "":
        return raw
    if "," in text:
        if _COMMA_GROUPED.match(text):
            raise ValueError(
                f"ambiguous comma in count {raw.strip()!r} (thousands separator or decimal comma); "
                "write counts without separators or with spaces"
            )
        if _DECIMAL_COMMA.match(text):
            return int(text.split(",", 1)[0])
        return raw
    try:
        value = float(text)
    except ValueError:
        return raw
    if value.is_integer():
        return int(value)
    return raw


class InputCsvRow(BaseModel):
    """One validated data row"""
    model_config = ConfigDict(frozen=True)

    region: str = Field(min_length=1)
    constituency_id: str = Field(min_length=1)
    registered_voters: NonNegativeInt
    ballots_cast: NonNegativeInt
    votes_against_all: NonNegativeInt
    invalid_ballots: NonNegativeInt
    candidate_votes: Dict[str, NonNegativeInt] = Field(default_factory=dict)

    @field_validator("region", "constituency_id", mode="before")
    @classmethod
    def _strip(cls, value: object) -> object:
        return value.strip() if isinstance(value, str) else value

    @field_validator(*COUNT_COLUMNS, mode="before")
    @classmethod
    def _count(cls, value: object) -> object:
        return normalize_count(value)

    @field_validator("candidate_votes", mode="before")
    @classmethod
    def _candidate_counts(cls, value: object) -> object:
        if isinstance(value, dict):
            return {k: normalize_count(v) for k, v in value.items() if str(v).strip() != ""}
        return value

    def to_record(self) -> ConstituencyRecord:
        return ConstituencyRecord(
            region=self.region,
            constituency_id=self.constituency_id,
            registered_voters=self.registered_voters,
            ballots_cast=self.ballots_cast,
            votes_against_all=self.votes_against_all,
            invalid_ballots=self.invalid_ballots,
            candidate_votes=dict(self.candidate_votes),
        )


@dataclass(frozen=True)
class Diagnostic:
    """Row-level ingestion note"""
    line: int
    severity: str  # "warning" | "error"
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.severity}: {self.message}"


@dataclass
class IngestResult:
    records: List[ConstituencyRecord] = field(default_factory=list)
    diagnostics: List[Diagnostic] = field(default_factory=list)

    @property
    def skipped(self) -> int:
        return sum(1 for d in self.diagnostics if d.severity == "error")


# ============================================
# READING
# ============================================

# Placeholder written into the first column of a row with too many fields,
# so the row keeps its slot and its line number.
_BAD_LINE = "\x00bad-line"


def _read_frame(path: Path) -> Tuple[pd.DataFrame, List[int]]:
    """
    Read the data file as strings.

    Returns the frame plus, in file order, the field count of every line
    wider than the header; those lines appear in the frame as placeholder
    rows.
    """
    if not path.is_file():
        raise InputFileError(f"data file not found: {path}")
    try:
        width = len(pd.read_csv(path, nrows=0, encoding="utf-8-sig").columns)
        placeholder = [_BAD_LINE] + [""] * (width - 1)
        bad_widths: List[int] = []

        def keep_slot(fields: List[str]) -> List[str]:
            bad_widths.append(len(fields))
            return list(placeholder)

        # A wide first data line makes pandas take its leading fields as an
        # index; such lines are skipped and restored as placeholders.
        leading: List[int] = []
        while True:
            bad_widths.clear()
            frame = pd.read_csv(
                path,
                dtype=str,
                keep_default_na=False,
                encoding="utf-8-sig",
                skip_blank_lines=False,
                skiprows=list(range(1, len(leading) + 1)),
                engine="python",
                on_bad_lines=keep_slot,
            )
            if frame.empty or isinstance(frame.index, pd.RangeIndex):
                break
            leading.append(width + frame.index.nlevels)
    except pd.errors.EmptyDataError as e:
        raise SchemaError("file is empty; a header row is required") from e
    except (UnicodeDecodeError, pd.errors.ParserError) as e:
        raise InputFileError(f"cannot parse {path} as UTF-8 CSV: {e}") from e

    if leading:
        frame = pd.concat(
            [pd.DataFrame([placeholder] * len(leading), columns=frame.columns), frame],
            ignore_index=True,
        )
    frame.columns = [str(c).strip().lower() for c in frame.columns]
    for column in REQUIRED_COLUMNS:
        if column not in frame.columns:
            raise SchemaError(f"missing required column '{column}'", column=column)
    return frame, leading + bad_widths


def _row_error(exc: Exception) -> str:
    if isinstance(exc, ValidationError):
        err = exc.errors()[0]
        where = ".".join(str(part) for part in err.get("loc", ()))
        return f"{where}: {err['msg']} (got {err.get('input')!r})"
    return str(exc)


def ingest(path: Union[str, Path], skip_bad: bool = False) -> IngestResult:
    """
    One record per valid row.

    Malformed rows, including lines with more fields than the header, are
    fatal (RowError with the line number) unless ``skip_bad`` is set, in
    which case they are skipped and reported.
    """
    path = Path(path)
    frame, bad_widths = _read_frame(path)
    candidate_columns = [c for c in frame.columns if c not in REQUIRED_COLUMNS]
    first_column = frame.columns[0]
    pending_bad = iter(bad_widths)
    result = IngestResult()

    def reject(line: int, message: str, cause: Optional[Exception] = None) -> None:
        if not skip_bad:
            raise RowError(message, line=line) from cause
        logger.warning("line %d skipped: %s", line, message)
        result.diagnostics.append(Diagnostic(line, "error", message))

    for offset, row in enumerate(frame.to_dict(orient="records")):
        line = offset + 2  # header is line 1
        if row[first_column] == _BAD_LINE:
            reject(line, f"expected {len(frame.columns)} fields, got {next(pending_bad)}")
            continue
        if all(pd.isna(v) or str(v).strip() == "" for v in row.values()):
            continue

        if any(is_decimal_comma(row[c]) for c in COUNT_COLUMNS):
            result.diagnostics.append(
                Diagnostic(line, "warning", "decimal comma normalized to a decimal point")
            )

        try:
            parsed = InputCsvRow(
                **{c: row[c] for c in REQUIRED_COLUMNS},
                candidate_votes={c: row[c] for c in candidate_columns},
            )
            record = parsed.to_record()
        except (ValidationError, DomainError) as e:
            reject(line, _row_error(e), e)
            continue

        if record.turnout_overflow:
            result.diagnostics.append(
                Diagnostic(line, "warning", f"turnout>100% ({record.turnout_pct:.2f}%)")
            )
        result.records.append(record)

    logger.debug("ingested %d records from %s (%d skipped)", len(result.records), path, result.skipped)
    return result


# ============================================
# WRITING
# ============================================

def records_frame(records: Sequence[ConstituencyRecord]) -> pd.DataFrame:
    candidates = sorted({name for r in records for name in r.candidate_votes})
    rows = []
    for r in records:
        row = {
            "region": r.region,
            "constituency_id": r.constituency_id,
            "registered_voters": r.registered_voters,
            "ballots_cast": r.ballots_cast,
            "votes_against_all": r.votes_against_all,
            "invalid_ballots": r.invalid_ballots,
        }
        for name in candidates:
            row[name] = r.candidate_votes.get(name, "")
        rows.append(row)
    return pd.DataFrame(rows, columns=list(REQUIRED_COLUMNS) + candidates)


def write_corpus(records: Sequence[ConstituencyRecord], path: Union[str, Path]) -> Path:
    """Write records in the input schema so they ingest back unchanged"""
    path = Path(path)
    try:
        records_frame(records).to_csv(path, index=False, encoding="utf-8", lineterminator="\n")
    except OSError as e:
        raise InputFileError(f"cannot write {path}: {e}") from e
    return path
