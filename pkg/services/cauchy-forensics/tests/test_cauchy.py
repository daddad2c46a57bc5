"""
Tests for the Cauchy law and the location interval probability
"""

import math

import numpy as np
import pytest
from cauchy_forensics.cauchy import cdf, location_interval_prob, pdf, quantile
from cauchy_forensics.errors import DomainError
from cauchy_forensics.models import CauchyParams


STANDARD = CauchyParams(0.0, 1.0)


# ============================================
# PARAMETERS
# ============================================

class TestCauchyParams:

    def test_valid(self):
        p = CauchyParams(-1.0, 1.2)
        assert p.location == -1.0
        assert p.scale == 1.2

    @pytest.mark.parametrize("scale", [0.0, -1.0])
    def test_non_positive_scale(self, scale):
        with pytest.raises(DomainError):
            CauchyParams(0.0, scale)

    @pytest.mark.parametrize("location,scale", [(math.nan, 1.0), (0.0, math.inf)])
    def test_non_finite(self, location, scale):
        with pytest.raises(DomainError):
            CauchyParams(location, scale)


# ============================================
# DENSITY
# ============================================

class TestPdf:

    def test_mode_of_standard(self):
        assert pdf(0.0, STANDARD) == pytest.approx(1 / math.pi)

    def test_mode_value(self):
        p = CauchyParams(2.5, 0.4)
        assert pdf(2.5, p) == pytest.approx(1 / (math.pi * 0.4))

    def test_one_scale_away_halves_mode(self):
        assert pdf(1.0, STANDARD) == pytest.approx(1 / (2 * math.pi))

    def test_array_input(self):
        out = pdf(np.array([-1.0, 0.0, 1.0]), STANDARD)
        assert out.shape == (3,)
        assert out[0] == pytest.approx(out[2])

    def test_integrates_to_interval_probability(self):
        p = CauchyParams(0.3, 1.7)
        x = np.linspace(-2.0, 1.5, 20001)
        trapezoid = getattr(np, "trapezoid", None) or np.trapz
        integral = trapezoid(pdf(x, p), x)
        assert integral == pytest.approx(cdf(1.5, p) - cdf(-2.0, p), abs=1e-8)

    def test_symmetric_about_location(self):
        p = CauchyParams(0.7, 1.3)
        d = np.linspace(0.0, 50 * 1.3, 1001)
        assert np.max(np.abs(pdf(0.7 + d, p) - pdf(0.7 - d, p))) <= 1e-15

    def test_mass_within_fifty_scales(self):
        p = CauchyParams(-0.4, 2.2)
        lo, hi = -0.4 - 50 * 2.2, -0.4 + 50 * 2.2
        x = np.linspace(lo, hi, 200001)
        trapezoid = getattr(np, "trapezoid", None) or np.trapz
        integral = trapezoid(pdf(x, p), x)
        assert integral == pytest.approx(cdf(hi, p) - cdf(lo, p), abs=1e-4)
        assert integral == pytest.approx(2 / math.pi * math.atan(50.0), abs=1e-4)


# ============================================
# CDF / QUANTILE
# ============================================

class TestCdf:

    def test_median_at_location(self):
        p = CauchyParams(-3.0, 2.0)
        assert cdf(-3.0, p) == pytest.approx(0.5)

    def test_upper_quartile(self):
        p = CauchyParams(1.0, 2.0)
        assert cdf(3.0, p) == pytest.approx(0.75)

    def test_interval_from_published_mean(self):
        diff = cdf(-1.1465, STANDARD) - cdf(-1.2965, STANDARD)
        assert diff == pytest.approx(0.0192, abs=5e-4)

    def test_monotone(self):
        x = np.linspace(-50, 50, 1001)
        assert np.all(np.diff(cdf(x, STANDARD)) > 0)

    def test_symmetry(self):
        p = CauchyParams(0.7, 1.3)
        for d in (0.1, 1.0, 12.0):
            assert cdf(0.7 - d, p) == pytest.approx(1 - cdf(0.7 + d, p))


class TestQuantile:

    def test_median(self):
        assert quantile(0.5, CauchyParams(2.0, 3.0)) == pytest.approx(2.0)

    def test_upper_quartile(self):
        assert quantile(0.75, STANDARD) == pytest.approx(1.0)

    def test_ninth_decile(self):
        assert quantile(0.9, STANDARD) == pytest.approx(3.0777, abs=1e-4)

    @pytest.mark.parametrize("u", [0.0, 1.0, -0.2, 1.5])
    def test_outside_open_interval(self, u):
        with pytest.raises(DomainError):
            quantile(u, STANDARD)

    def test_inverts_cdf(self):
        p = CauchyParams(5.0, 0.3)
        u = np.linspace(0.01, 0.99, 99)
        assert np.allclose(cdf(quantile(u, p), p), u, atol=1e-12)

    @pytest.mark.parametrize("location,scale", [(0.0, 1.0), (-1.2, 2.5), (3.0, 0.5)])
    def test_inverts_cdf_over_forty_scales(self, location, scale):
        p = CauchyParams(location, scale)
        x = np.linspace(location - 20 * scale, location + 20 * scale, 1000)
        assert np.max(np.abs(quantile(cdf(x, p), p) - x)) <= 1e-9


# ============================================
# LOCATION INTERVAL PROBABILITY
# ============================================

class TestLocationIntervalProb:

    @pytest.mark.parametrize("lo,hi,scale,expected", [
        (-1.1, -0.95, 1.0, 0.0192),
        (-1.1, -0.95, 1.26, 0.0195),
        (-1.04, -1.02, 1.0, 0.0025),
        (-1.04, -1.02, 1.26, 0.0026),
    ])
    def test_published_values(self, lo, hi, scale, expected):
        assert location_interval_prob(lo, hi, 0.1965, scale) == pytest.approx(expected, abs=5e-4)

    def test_quartile_span_is_half(self):
        mean, scale = 0.37, 1.9
        assert location_interval_prob(mean - scale, mean + scale, mean, scale) == pytest.approx(0.5)

    def test_equals_cdf_difference(self):
        p = CauchyParams(0.2, 1.1)
        expected = cdf(0.4, p) - cdf(-0.6, p)
        assert location_interval_prob(-0.6, 0.4, 0.2, 1.1) == pytest.approx(expected, abs=1e-15)

    @pytest.mark.parametrize("lo,hi", [(1.0, 1.0), (2.0, -2.0)])
    def test_empty_interval(self, lo, hi):
        with pytest.raises(DomainError):
            location_interval_prob(lo, hi, 0.0, 1.0)

    def test_non_finite_mean(self):
        with pytest.raises(DomainError):
            location_interval_prob(-1.0, 1.0, math.inf, 1.0)

    def test_invalid_scale(self):
        with pytest.raises(DomainError):
            location_interval_prob(-1.0, 1.0, 0.0, 0.0)
