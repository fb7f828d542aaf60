"""
Comparison estimators: KNN, ordinary Kriging, ARIMA and a Kalman filter.
"""

from shared.baselines.arima import arima_estimate, arima_forecast, fit_ar
from shared.baselines.config import BaselineSettings, get_baseline_settings
from shared.baselines.dispatch import (
    ESTIMATION_BASELINES,
    PREDICTION_BASELINES,
    estimate,
    predict,
)
from shared.baselines.kalman import KalmanFilter, kalman_predict
from shared.baselines.knn import KnnModel, idw_weights, knn_estimate
from shared.baselines.kriging import (
    KrigingModel,
    Variogram,
    empirical_semivariogram,
    fit_variogram,
    kriging_estimate,
    kriging_weights,
)
from shared.baselines.spatial import CentralPoints

__all__ = [
    "ESTIMATION_BASELINES",
    "PREDICTION_BASELINES",
    "BaselineSettings",
    "CentralPoints",
    "KalmanFilter",
    "KnnModel",
    "KrigingModel",
    "Variogram",
    "arima_estimate",
    "arima_forecast",
    "empirical_semivariogram",
    "estimate",
    "fit_ar",
    "fit_variogram",
    "get_baseline_settings",
    "idw_weights",
    "kalman_predict",
    "knn_estimate",
    "kriging_estimate",
    "kriging_weights",
    "predict",
]
