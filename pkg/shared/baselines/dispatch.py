"""
Method dispatch used by the evaluation harness.
"""

from collections.abc import Iterable
from typing import Literal

import numpy as np

from shared.baselines.arima import arima_estimate, arima_forecast
from shared.baselines.config import BaselineSettings, get_baseline_settings
from shared.baselines.kalman import kalman_predict
from shared.baselines.knn import KnnModel
from shared.baselines.kriging import KrigingModel
from shared.baselines.spatial import CentralPoints
from shared.exceptions import BaselineError, CorrelationError
from shared.speed.series import SpeedSeries

BaselineMethod = Literal["knn", "kriging", "arima"]
BaselinePredictor = Literal["kf", "arima"]

ESTIMATION_BASELINES: tuple[str, ...] = ("knn", "kriging", "arima")
PREDICTION_BASELINES: tuple[str, ...] = ("kf", "arima")


def estimate(
    method: BaselineMethod,
    targets: Iterable[str],
    n: int,
    series: SpeedSeries,
    points: CentralPoints,
    w: int,
    settings: BaselineSettings | None = None,
) -> dict[str, float]:
    """
    Estimate X(n) of the target segments with one baseline.

    Targets the method cannot serve (no neighbors, short history) are left out.

    Args:
        method: knn, kriging or arima
        targets: Segments to estimate (vacant at n in ``series``)
        n: Interval ordinal
        series: Series with history and the visible cells of interval n
        points: Central points of the net
        w: Window length (ARIMA uses the previous w-1 values)
        settings: Baseline settings

    Returns:
        Segment id -> estimate
    """
    settings = settings or get_baseline_settings()
    targets = list(targets)
    results: dict[str, float] = {}

    if method == "knn":
        model: KnnModel | KrigingModel = KnnModel(series, n, points, settings.knn_k)
    elif method == "kriging":
        model = KrigingModel(
            series, n, points, settings.kriging_lags, settings.kriging_closest, settings.knn_k
        )
    elif method == "arima":
        for segment_id in targets:
            try:
                results[segment_id] = arima_estimate(
                    segment_id, n, series, w, settings.arima_order
                )
            except CorrelationError:
                continue
        return results
    else:
        raise ValueError(f"Unknown baseline method: {method}")

    for segment_id in targets:
        try:
            results[segment_id] = model.estimate(segment_id)
        except BaselineError:
            continue
    return results


def predict(
    method: BaselinePredictor,
    targets: Iterable[str],
    n: int,
    series: SpeedSeries,
    w: int,
    settings: BaselineSettings | None = None,
) -> dict[str, float]:
    """
    Predict X(n+1) of the target segments with one baseline.

    Args:
        method: kf or arima
        targets: Segments to predict
        n: Last populated interval
        series: Series populated through n
        w: Window length (ARIMA uses the last w-1 values)
        settings: Baseline settings

    Returns:
        Segment id -> prediction
    """
    settings = settings or get_baseline_settings()
    results: dict[str, float] = {}
    for segment_id in targets:
        if method == "kf":
            try:
                results[segment_id] = kalman_predict(
                    segment_id,
                    n,
                    series,
                    settings.kf_process_variance,
                    settings.kf_observation_variance,
                )
            except ValueError:
                continue
        elif method == "arima":
            first = max(1, n - w + 2)
            history = series.vector(segment_id, first, n)
            if history.size == 0 or np.isnan(history).any():
                continue
            results[segment_id] = arima_forecast(history, settings.arima_order)
        else:
            raise ValueError(f"Unknown baseline predictor: {method}")
    return results
