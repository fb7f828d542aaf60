"""
ARIMA(p, 1, 0) one-step forecasts fitted by least squares.
"""

import numpy as np

from shared.correlation.ccf import SeriesView, populated_slice


def fit_ar(differences: np.ndarray, order: int = 1) -> np.ndarray:
    """
    AR(p) coefficients without intercept, d_t = sum_i phi_i d_{t-i}.

    Too short or all-zero inputs give zero coefficients.
    """
    d = np.asarray(differences, dtype=float)
    if d.size <= order:
        return np.zeros(order)
    design = np.column_stack([d[order - i - 1 : d.size - i - 1] for i in range(order)])
    target = d[order:]
    if not design.any():
        return np.zeros(order)
    phi, *_ = np.linalg.lstsq(design, target, rcond=None)
    return phi


def arima_forecast(history: np.ndarray, order: int = 1) -> float:
    """
    One-step forecast of a series from ARIMA(order, 1, 0), clamped at 0.
    """
    history = np.asarray(history, dtype=float)
    if history.size < 2:
        return float(max(0.0, history[-1]))
    d = np.diff(history)
    phi = fit_ar(d, order)
    recent = d[::-1][:order]
    step = float(np.dot(phi[: recent.size], recent))
    return float(max(0.0, history[-1] + step))


def arima_estimate(
    segment_id: str, n: int, series: SeriesView, w: int, order: int = 1
) -> float:
    """
    Estimate X_segment(n) from its previous w-1 values.

    Raises:
        InsufficientHistoryError: If n - w + 1 < 1
        VacantEntryError: If the history holds a vacancy
    """
    history = populated_slice(series, segment_id, n - w + 1, n - 1)
    return arima_forecast(history, order)
