"""
Tests for CSV ingestion and corpus writing
"""

from pathlib import Path

import pytest
from cauchy_forensics.config import FraudMode, ScenarioConfig
from cauchy_forensics.errors import InputFileError, RowError, SchemaError
from cauchy_forensics.ingest import ingest, normalize_count, write_corpus
from cauchy_forensics.simulator import generate


FIXTURES = Path(__file__).parent / "fixtures"

HEADER = "region,constituency_id,registered_voters,ballots_cast,votes_against_all,invalid_ballots"


# ============================================
# FIXTURES
# ============================================

@pytest.fixture
def write_csv(tmp_path):
    def _write(*lines, name="returns.csv"):
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path
    return _write


# ============================================
# COUNT NORMALIZATION
# ============================================

class TestNormalizeCount:

    @pytest.mark.parametrize("raw,expected", [
        ("12345", 12345),
        (" 12 345 ", 12345),
        ("12 345", 12345),
        ("1234,0", 1234),
        ("1234,000", 1234),
        ("1234.0", 1234),
    ])
    def test_integral(self, raw, expected):
        assert normalize_count(raw) == expected

    @pytest.mark.parametrize("raw", ["12.5", "abc", ""])
    def test_left_for_validator(self, raw):
        assert normalize_count(raw) == raw

    @pytest.mark.parametrize("raw", ["1,000", "150,000", " 12,345 ", "1,234,567"])
    def test_comma_grouped_rejected(self, raw):
        with pytest.raises(ValueError, match="ambiguous comma"):
            normalize_count(raw)

    @pytest.mark.parametrize("raw", ["12,5", "1234,05"])
    def test_fractional_comma_left_for_validator(self, raw):
        assert normalize_count(raw) == raw


# ============================================
# READING
# ============================================

class TestIngest:

    def test_well_formed_fixture(self):
        result = ingest(FIXTURES / "returns_small.csv")
        assert len(result.records) == 3
        assert result.diagnostics == []
        first = result.records[0]
        assert first.region == "Kyiv"
        assert first.constituency_id == "1"
        assert first.ballots_cast == 112500
        assert first.candidate_votes == {"candidate_a": 60000, "candidate_b": 48000}

    def test_overflow_accepted_with_warning(self, write_csv):
        path = write_csv(HEADER, "A,1,1000,1007,10,5")
        result = ingest(path)
        assert result.records[0].turnout_pct == pytest.approx(100.7)
        assert [d.severity for d in result.diagnostics] == ["warning"]
        assert "turnout>100%" in result.diagnostics[0].message

    def test_invariant_violation(self, write_csv):
        path = write_csv(HEADER, "A,1,1000,700,10,5", "A,2,1000,700,800,0")
        with pytest.raises(RowError) as exc:
            ingest(path)
        assert exc.value.line == 3

    def test_non_integer_count(self, write_csv):
        path = write_csv(HEADER, "A,1,1000,700.5,10,5")
        with pytest.raises(RowError, match="line 2"):
            ingest(path)

    def test_negative_count(self, write_csv):
        path = write_csv(HEADER, "A,1,1000,-700,10,5")
        with pytest.raises(RowError):
            ingest(path)

    def test_skip_bad(self, write_csv):
        path = write_csv(HEADER, "A,1,1000,700,10,5", "A,2,1000,abc,10,5", "A,3,1000,650,10,5")
        result = ingest(path, skip_bad=True)
        assert [r.constituency_id for r in result.records] == ["1", "3"]
        assert result.skipped == 1
        assert result.diagnostics[0].line == 3

    def test_decimal_comma_warns(self, write_csv):
        path = write_csv(HEADER, 'A,1,1000,"700,0",10,5')
        result = ingest(path)
        assert result.records[0].ballots_cast == 700
        assert [d.severity for d in result.diagnostics] == ["warning"]

    def test_thousands_space(self, write_csv):
        path = write_csv(HEADER, "A,1,150 000,112 500,3000,1500")
        assert ingest(path).records[0].registered_voters == 150000

    def test_comma_grouped_count_is_row_error(self, write_csv):
        path = write_csv(HEADER, 'A,1,"150,000",112500,3000,1500')
        with pytest.raises(RowError, match="ambiguous comma") as exc:
            ingest(path)
        assert exc.value.line == 2

    def test_comma_grouped_candidate_skipped(self, write_csv):
        path = write_csv(HEADER + ",candidate_a", 'A,1,1000,700,10,5,"1,000"', "A,2,1000,650,10,5,600")
        result = ingest(path, skip_bad=True)
        assert [r.constituency_id for r in result.records] == ["2"]
        assert result.diagnostics[0].line == 2
        assert "ambiguous comma" in result.diagnostics[0].message

    def test_extra_fields_is_row_error(self, write_csv):
        path = write_csv(HEADER, "A,1,1000,700,10,5", "A,2,1000,650,10,5,99")
        with pytest.raises(RowError, match="expected 6 fields, got 7") as exc:
            ingest(path)
        assert exc.value.line == 3

    def test_extra_fields_skipped(self, write_csv):
        path = write_csv(
            HEADER,
            "A,1,1000,700,10,5",
            "A,2,1000,650,10,5,99,98",
            "A,3,1000,600,10,5",
            "A,4,1000,640,10,5,1",
            "A,5,1000,610,10,5",
        )
        result = ingest(path, skip_bad=True)
        assert [r.constituency_id for r in result.records] == ["1", "3", "5"]
        assert [(d.line, d.severity) for d in result.diagnostics] == [(3, "error"), (5, "error")]
        assert result.diagnostics[0].message == "expected 6 fields, got 8"
        assert result.skipped == 2

    def test_extra_fields_after_blank_line(self, write_csv):
        path = write_csv(HEADER, "A,1,1000,700,10,5", "", "A,2,1000,650,10,5,99")
        result = ingest(path, skip_bad=True)
        assert len(result.records) == 1
        assert result.diagnostics[0].line == 4

    def test_extra_fields_on_first_data_line(self, write_csv):
        path = write_csv(HEADER, "A,1,1000,700,10,5,99", "A,2,1000,650,10,5")
        result = ingest(path, skip_bad=True)
        assert [r.constituency_id for r in result.records] == ["2"]
        assert result.records[0].region == "A"
        assert [(d.line, d.message) for d in result.diagnostics] == [(2, "expected 6 fields, got 7")]

    def test_missing_column(self, write_csv):
        path = write_csv(
            "region,constituency_id,registered_voters,votes_against_all,invalid_ballots",
            "A,1,1000,10,5",
        )
        with pytest.raises(SchemaError) as exc:
            ingest(path)
        assert exc.value.column == "ballots_cast"
        assert "ballots_cast" in str(exc.value)

    def test_header_only(self, write_csv):
        assert ingest(write_csv(HEADER)).records == []

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(SchemaError):
            ingest(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputFileError):
            ingest(tmp_path / "nope.csv")

    def test_byte_order_mark(self, tmp_path):
        path = tmp_path / "bom.csv"
        path.write_text("\ufeff" + HEADER + "\nA,1,1000,700,10,5\n", encoding="utf-8")
        assert len(ingest(path).records) == 1


# ============================================
# WRITING
# ============================================

class TestWriteCorpus:

    def test_round_trip(self, tmp_path):
        config = ScenarioConfig(seed=8, fraud_mode=FraudMode.TURNOUT_SHIFT, fraud_magnitude=3.0)
        records = generate(config)
        path = write_corpus(records, tmp_path / "corpus.csv")
        result = ingest(path)
        assert result.records == records

    def test_unwritable(self, tmp_path):
        with pytest.raises(InputFileError):
            write_corpus(generate(ScenarioConfig(seed=1)), tmp_path / "missing" / "corpus.csv")
