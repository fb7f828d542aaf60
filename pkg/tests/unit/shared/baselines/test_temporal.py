"""
Unit tests for the ARIMA and Kalman filter baselines and method dispatch.
"""

import numpy as np
import pytest

from shared.baselines.arima import arima_estimate, arima_forecast, fit_ar
from shared.baselines.config import BaselineSettings
from shared.baselines.dispatch import estimate, predict
from shared.baselines.kalman import KalmanFilter, kalman_predict
from shared.baselines.spatial import CentralPoints
from shared.exceptions import InsufficientHistoryError
from shared.speed.series import Provenance, SpeedSeries
from tests.builders import chain_net


def row_series(values_by_segment: dict[str, list[float | None]]) -> SpeedSeries:
    ids = sorted(values_by_segment)
    n = len(next(iter(values_by_segment.values())))
    series = SpeedSeries(ids, n)
    for sid, values in values_by_segment.items():
        for j, v in enumerate(values, start=1):
            if v is not None:
                series.set(sid, j, v, Provenance.MEASURED)
    return series


class TestArima:
    """Tests for ARIMA(p, 1, 0)."""

    def test_recovers_ar_coefficient(self):
        """Test d_t = 0.5 d_{t-1}."""
        d = 8.0 * 0.5 ** np.arange(10)

        assert fit_ar(d, 1) == pytest.approx([0.5])

    def test_short_or_flat_input(self):
        """Test degenerate inputs give zero coefficients."""
        assert fit_ar(np.array([1.0]), 2).tolist() == [0.0, 0.0]
        assert fit_ar(np.zeros(6), 1).tolist() == [0.0]

    def test_linear_trend(self):
        """Test a constant step continues."""
        assert arima_forecast(np.array([1.0, 2.0, 3.0, 4.0])) == pytest.approx(5.0)

    def test_clamped_at_zero(self):
        """Test a falling series never forecasts below zero."""
        assert arima_forecast(np.array([3.0, 2.0, 1.0, 0.0])) == 0.0

    def test_single_value(self):
        """Test persistence for one observation."""
        assert arima_forecast(np.array([6.0])) == 6.0

    def test_estimate_uses_previous_window(self):
        """Test X(n) from X(n-w+1 .. n-1)."""
        series = row_series({"a": [1.0, 2.0, 3.0, 4.0, None]})

        assert arima_estimate("a", 5, series, 5) == pytest.approx(5.0)

    def test_estimate_needs_history(self):
        """Test a window reaching before interval 1."""
        series = row_series({"a": [1.0, 2.0, 3.0]})

        with pytest.raises(InsufficientHistoryError):
            arima_estimate("a", 3, series, 5)


class TestKalmanFilter:
    """Tests for the random-walk Kalman filter."""

    def test_recursion(self):
        """Test the gain and variance updates step by step."""
        kf = KalmanFilter(process_variance=0.5, observation_variance=1.0)

        assert kf.update(10.0) == 10.0
        assert kf.update(12.0) == pytest.approx(11.2)
        assert kf.p == pytest.approx(0.6)
        gain = 1.1 / 2.1
        assert kf.update(11.0) == pytest.approx(11.2 - 0.2 * gain)

    def test_predict_before_data(self):
        """Test an empty filter."""
        with pytest.raises(ValueError):
            KalmanFilter().predict()

    def test_zero_variances(self):
        """Test q = r = 0 tracks the latest observation."""
        assert KalmanFilter(0.0, 0.0).run([4.0, 9.0]) == 9.0

    def test_predict_skips_vacancies(self):
        """Test only populated intervals are filtered."""
        series = row_series({"a": [None, 10.0, None, 12.0]})

        assert kalman_predict("a", 4, series) == pytest.approx(11.2)

    def test_predict_without_observations(self):
        """Test a never-valued segment."""
        series = row_series({"a": [None, None]})

        with pytest.raises(ValueError):
            kalman_predict("a", 2, series)


class TestDispatch:
    """Tests for estimate and predict."""

    def test_estimate_knn_leaves_out_unserved(self):
        """Test targets without neighbors are omitted."""
        net = chain_net([100.0] * 3)
        points = CentralPoints(net)
        series = row_series({"s0": [10.0], "s1": [None], "s2": [20.0]})

        results = estimate("knn", ["s1"], 1, series, points, w=2)

        empty = row_series({"s0": [None], "s1": [None], "s2": [None]})

        assert results == {"s1": pytest.approx(15.0)}
        assert estimate("knn", ["s1"], 1, empty, points, w=2) == {}

    def test_estimate_arima_needs_history(self):
        """Test short histories are omitted."""
        net = chain_net([100.0] * 2)
        series = row_series({"s0": [1.0, 2.0, 3.0, None], "s1": [None, 2.0, 3.0, None]})

        results = estimate("arima", ["s0", "s1"], 4, series, CentralPoints(net), w=4)

        assert results == {"s0": pytest.approx(4.0)}

    def test_unknown_method(self):
        """Test unsupported names."""
        net = chain_net([100.0])
        series = row_series({"s0": [1.0]})

        with pytest.raises(ValueError):
            estimate("mean", ["s0"], 1, series, CentralPoints(net), w=2)
        with pytest.raises(ValueError):
            predict("knn", ["s0"], 1, series, w=2)

    def test_predict_methods(self):
        """Test kf and arima one-step predictions."""
        series = row_series({"a": [1.0, 2.0, 3.0], "b": [None, None, None]})
        settings = BaselineSettings(kf_process_variance=0.0)

        assert predict("arima", ["a", "b"], 3, series, w=4) == {"a": pytest.approx(4.0)}
        assert predict("kf", ["a", "b"], 3, series, w=4, settings=settings) == {
            "a": pytest.approx(2.0)
        }
