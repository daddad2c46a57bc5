"""
Tests for the comparison with the published 2004 figures

The real dataset is not shipped; point CAUCHY_FORENSICS_DATASET at a CSV
of the 2004 first round in the input schema to run the conditional tests.
"""

import dataclasses
import json
import logging
import os

import pytest
from cauchy_forensics.cli import run
from cauchy_forensics.config import ScenarioConfig
from cauchy_forensics.ingest import ingest, write_corpus
from cauchy_forensics.reproduction import (
    PUBLISHED_REFERENCE,
    SUSPECT_REGIONS_2004,
    Delta,
    analyze_2004,
    compare_to_published,
)
from cauchy_forensics.simulator import generate


DATASET = os.environ.get("CAUCHY_FORENSICS_DATASET")

needs_dataset = pytest.mark.skipif(not DATASET, reason="CAUCHY_FORENSICS_DATASET not set")


@pytest.fixture(scope="module")
def synthetic_2004():
    """Simulated corpus relabelled with the 2004 suspect regions"""
    records = generate(ScenarioConfig(seed=2004, suspect_region="Donetsk"))
    out = []
    for i, r in enumerate(records):
        if r.region == "Donetsk" and i % 2:
            r = dataclasses.replace(r, region="Luhansk")
        out.append(r)
    return out


class TestDelta:

    def test_within(self):
        d = Delta("x", published=1.0, observed=1.05, tolerance=0.1)
        assert d.delta == pytest.approx(0.05)
        assert d.within

    def test_outside(self):
        assert not Delta("x", published=1.0, observed=0.8, tolerance=0.1).within


class TestCompareToPublished:

    def test_figures_covered(self, synthetic_2004):
        deltas = compare_to_published(analyze_2004(synthetic_2004))
        names = [d.name for d in deltas]
        assert "turnout_pct.mean" in names
        assert "against_all_pct.mean" in names
        assert "sample_mean" in names
        assert sum(1 for n in names if n.startswith("sweep[")) == 8
        assert sum(1 for n in names if n.startswith("P[")) == 4

    def test_only_reference_means_gated(self, synthetic_2004):
        gated = {d.name for d in compare_to_published(analyze_2004(synthetic_2004)) if d.gated}
        assert gated == {"turnout_pct.mean", "against_all_pct.mean"}

    def test_gated_misses_logged(self, synthetic_2004, caplog):
        caplog.set_level(logging.DEBUG, logger="cauchy_forensics.reproduction")
        deltas = compare_to_published(analyze_2004(synthetic_2004))
        messages = [r.getMessage() for r in caplog.records if r.name == "cauchy_forensics.reproduction"]
        assert f"compared {len(deltas)} figures to the published results" in messages
        missed = [d.name for d in deltas if d.gated and not d.within]
        assert [m.split(" ")[0] for m in messages if " off by " in m] == missed

    def test_cli(self, synthetic_2004, tmp_path, capsys):
        path = write_corpus(synthetic_2004, tmp_path / "returns.csv")
        code = run(["reproduce", "--data", str(path), "--json"])
        deltas = json.loads(capsys.readouterr().out)
        failed = [d for d in deltas if d["gated"] and not d["within"]]
        assert code == (2 if failed else 0)


@needs_dataset
class TestPublishedDataset:

    @pytest.fixture(scope="class")
    def report(self):
        return analyze_2004(ingest(DATASET, skip_bad=True).records)

    def test_suspect_count(self, report):
        assert report.suspect_regions == list(SUSPECT_REGIONS_2004)
        assert len(report.ratios) == 35

    def test_reference_means(self, report):
        ref = report.reference
        assert ref.turnout.mean == pytest.approx(PUBLISHED_REFERENCE["turnout_pct"]["mean"], abs=0.1)
        assert ref.against_all.mean == pytest.approx(PUBLISHED_REFERENCE["against_all_pct"]["mean"], abs=0.1)

    def test_sample_mean_and_probability(self, report):
        assert report.sample_mean == pytest.approx(0.1965, abs=5e-4)
        p = next(p for p in report.probabilities if (p.lo, p.hi, p.scale) == (-1.1, -0.95, 1.0))
        assert p.probability == pytest.approx(0.0192, abs=5e-4)
