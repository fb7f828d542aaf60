"""
One-step travel speed prediction by weighted lagged regressions.
"""

from shared.prediction.config import PredictionSettings, get_prediction_settings
from shared.prediction.predictor import (
    PredictionState,
    Predictor,
    determination_weights,
    positive_lag_contributors,
    predict_next,
)
from shared.prediction.regression import Regression, fit_regression, ols

__all__ = [
    "PredictionSettings",
    "PredictionState",
    "Predictor",
    "Regression",
    "determination_weights",
    "fit_regression",
    "get_prediction_settings",
    "ols",
    "positive_lag_contributors",
    "predict_next",
]
