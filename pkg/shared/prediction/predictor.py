"""
One-step prediction from positively lagged contributors.

Each contributor r_i with k >= 1 already shows at n-k+1 the traffic that reaches r
at n+1. A per-contributor lagged regression maps that value onto r, and the
predictions are blended with weights c_now^2 / sum(c_now^2).
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from shared.config.logging import get_logger
from shared.correlation.ccf import c_now
from shared.correlation.lag import LagTable
from shared.exceptions import (
    CorrelationError,
    DegeneratePredictorError,
    EmptyContributorsError,
)
from shared.prediction.config import PredictionSettings, get_prediction_settings
from shared.prediction.regression import fit_regression
from shared.roadnet.distance import UpstreamEntry
from shared.speed.series import SpeedSeries

logger = get_logger(__name__)


@dataclass
class PredictionState:
    """Fully populated series up to n with the lag table of the window ending at n."""

    series: SpeedSeries
    lags: LagTable
    upstream: Mapping[str, Sequence[UpstreamEntry]]
    w: int


def positive_lag_contributors(
    r: str, n: int, state: PredictionState
) -> list[tuple[str, int, float]]:
    """
    Contributors with k >= 1 and a defined c_now at interval n.

    Returns:
        (segment id, k, c_now), vicinity to remote

    Raises:
        EmptyContributorsError: If no contributor qualifies
    """
    x_n = state.series.value(r, n)
    found: list[tuple[str, int, float]] = []
    if x_n is not None:
        for entry in state.upstream.get(r, ()):
            k = state.lags.lag(entry.segment_id, r)
            if k is None or k < 1:
                continue
            try:
                c = c_now(entry.segment_id, r, n, state.w, k, state.series, x_n)
            except CorrelationError:
                continue
            found.append((entry.segment_id, k, c))
    if not found:
        raise EmptyContributorsError(r)
    return found


def determination_weights(correlations: Sequence[float]) -> np.ndarray:
    """
    omega_i = c_i^2 / sum c^2.

    Raises:
        ValueError: If every correlation is zero
    """
    squared = np.square(np.asarray(correlations, dtype=float))
    total = squared.sum()
    if total == 0.0:
        raise ValueError("All correlations are zero")
    return squared / total


def predict_next(
    r: str, n: int, state: PredictionState, settings: PredictionSettings | None = None
) -> float:
    """
    Predict X_r(n+1).

    Falls back to persistence X_r(n) when no contributor survives.

    Args:
        r: Segment id
        n: Last populated interval
        state: Prediction state
        settings: Prediction settings (v_max clamp)

    Returns:
        Predicted speed in [0, v_max]
    """
    settings = settings or get_prediction_settings()
    x_n = state.series.value(r, n)
    if x_n is None:
        raise ValueError(f"Interval {n} of {r} must be populated")
    persistence = float(np.clip(x_n, 0.0, settings.v_max))

    try:
        contributors = positive_lag_contributors(r, n, state)
    except EmptyContributorsError:
        return persistence

    predictions: list[float] = []
    correlations: list[float] = []
    for u, k, c in contributors:
        ahead = state.series.value(u, n - k + 1)
        if ahead is None:
            continue
        try:
            regression = fit_regression(u, r, n, state.w, k, state.series)
        except (DegeneratePredictorError, CorrelationError):
            continue
        predictions.append(regression(ahead))
        correlations.append(c)

    if not predictions:
        return persistence
    try:
        weights = determination_weights(correlations)
    except ValueError:
        return persistence
    return float(np.clip(np.dot(weights, predictions), 0.0, settings.v_max))


class Predictor:
    """Predicts every segment one interval ahead."""

    def __init__(
        self,
        upstream: Mapping[str, Sequence[UpstreamEntry]],
        settings: PredictionSettings | None = None,
        w: int | None = None,
    ):
        """
        Initialize predictor.

        Args:
            upstream: Upstream area of every segment
            settings: Prediction settings
            w: Window length; defaults to settings.window
        """
        self.upstream = upstream
        self.settings = settings or get_prediction_settings()
        self.w = w or self.settings.window

    def predict_interval(self, series: SpeedSeries, n: int, lags: LagTable) -> dict[str, float]:
        """
        Predictions of X(n+1) for all segments.

        Args:
            series: Series populated through interval n
            n: Last populated interval
            lags: Lag table of the window ending at n

        Returns:
            Segment id -> predicted speed
        """
        state = PredictionState(series=series, lags=lags, upstream=self.upstream, w=self.w)
        predictions = {r: predict_next(r, n, state, self.settings) for r in series.segment_ids}
        logger.debug("interval_predicted", n=n, segments=len(predictions))
        return predictions
