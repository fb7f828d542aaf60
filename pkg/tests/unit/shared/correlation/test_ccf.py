"""
Unit tests for windowed cross-correlation.
"""

import numpy as np
import pytest

from shared.correlation.ccf import c_now, c_pre, cross_correlation, populated_slice
from shared.exceptions import DegenerateSeriesError, InsufficientHistoryError, VacantEntryError
from shared.speed.series import Provenance, SpeedSeries


def lagged_series(k: int, n_intervals: int = 30, seed: int = 0) -> SpeedSeries:
    """Series where r repeats u delayed by k intervals."""
    rng = np.random.default_rng(seed)
    base = rng.uniform(5.0, 15.0, n_intervals + k)
    series = SpeedSeries(["r", "u"], n_intervals)
    for j in range(1, n_intervals + 1):
        series.set("u", j, float(base[j - 1 + k]), Provenance.MEASURED)
        series.set("r", j, float(base[j - 1]), Provenance.MEASURED)
    return series


class TestCrossCorrelation:
    """Tests for cross_correlation."""

    def test_matches_pearson(self):
        """Test agreement with Pearson from its definition on 1000 random pairs."""
        rng = np.random.default_rng(7)
        for _ in range(1000):
            size = int(rng.integers(2, 60))
            scale = rng.uniform(0.1, 30.0)
            x = rng.normal(size=size) * scale + rng.uniform(-50, 50)
            y = 0.5 * x + rng.normal(size=size) * rng.uniform(0.1, 10.0)
            xc, yc = x - x.mean(), y - y.mean()
            expected = np.sum(xc * yc) / np.sqrt(np.sum(xc**2) * np.sum(yc**2))

            assert cross_correlation(x, y) == pytest.approx(expected, abs=1e-12)

    def test_affine_invariance(self):
        """Test perfect positive and negative correlation."""
        x = np.array([1.0, 4.0, 2.0, 8.0])

        assert cross_correlation(x, 3 * x + 2) == pytest.approx(1.0)
        assert cross_correlation(x, -x) == pytest.approx(-1.0)

    def test_constant_slice(self):
        """Test zero variance is degenerate."""
        with pytest.raises(DegenerateSeriesError):
            cross_correlation(np.ones(5), np.arange(5.0))

    @pytest.mark.parametrize("x,y", [([1.0, 2.0], [1.0, 2.0, 3.0]), ([1.0], [2.0])])
    def test_bad_shapes(self, x, y):
        """Test unequal and too-short slices."""
        with pytest.raises(ValueError):
            cross_correlation(np.array(x), np.array(y))


class TestPopulatedSlice:
    """Tests for populated_slice."""

    def test_slice_before_first_interval(self):
        """Test a window reaching before interval 1."""
        with pytest.raises(InsufficientHistoryError):
            populated_slice(lagged_series(0), "u", 0, 3)

    def test_vacant_entry(self):
        """Test a hole inside the window."""
        series = lagged_series(0)
        series.clear("u", 3)

        with pytest.raises(VacantEntryError):
            populated_slice(series, "u", 1, 5)

    def test_inclusive_bounds(self):
        """Test both ends are included."""
        assert populated_slice(lagged_series(0), "u", 2, 6).shape == (5,)


class TestWindowedCorrelation:
    """Tests for c_pre and c_now."""

    @pytest.mark.parametrize("k", [0, 1, 3])
    def test_true_lag_gives_perfect_correlation(self, k):
        """Test alignment by k intervals recovers an exact delay."""
        series = lagged_series(k)
        n, w = 20, 8

        assert c_pre("u", "r", n, w, k, series) == pytest.approx(1.0)
        truth = series.value("r", n)
        assert c_now("u", "r", n, w, k, series, truth) == pytest.approx(1.0)

    def test_c_now_ignores_stored_target_value(self):
        """Test the candidate replaces X_r(n)."""
        series = lagged_series(2)
        n, w = 15, 6
        truth = series.value("r", n)
        series.clear("r", n)

        assert c_now("u", "r", n, w, 2, series, truth) == pytest.approx(1.0)

    def test_c_now_moves_with_candidate(self):
        """Test a wrong candidate lowers the correlation."""
        series = lagged_series(1)
        n, w = 15, 6

        assert c_now("u", "r", n, w, 1, series, 100.0) < 0.99

    def test_window_must_fit_history(self):
        """Test n - k - w < 1 is rejected."""
        with pytest.raises(InsufficientHistoryError):
            c_pre("u", "r", 5, 4, 1, lagged_series(1))
