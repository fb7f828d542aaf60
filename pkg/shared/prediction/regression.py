"""
Lagged linear regression between a contributor and its target.
"""

from dataclasses import dataclass

import numpy as np

from shared.correlation.ccf import SeriesView, populated_slice
from shared.exceptions import DegeneratePredictorError


@dataclass(frozen=True, slots=True)
class Regression:
    """X_r = a * X_{r_i} + b."""

    a: float
    b: float

    def __call__(self, x: float) -> float:
        return self.a * x + self.b


def ols(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """
    Ordinary least squares of y on x with intercept.

    Raises:
        ValueError: If x is constant
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xc = x - x.mean()
    sxx = float(np.dot(xc, xc))
    if sxx == 0.0:
        raise ValueError("Predictor is constant")
    a = float(np.dot(xc, y - y.mean())) / sxx
    return a, float(y.mean() - a * x.mean())


def fit_regression(
    r_i: str, r: str, n: int, w: int, k: int, series: SeriesView
) -> Regression:
    """
    Regress X_r(j) on X_{r_i}(j - k) over j = n-w+1 .. n.

    Raises:
        DegeneratePredictorError: If the contributor slice is constant
        InsufficientHistoryError: If the slices start before interval 1
        VacantEntryError: If a slice holds a vacancy
    """
    x = populated_slice(series, r_i, n - k - w + 1, n - k)
    y = populated_slice(series, r, n - w + 1, n)
    try:
        a, b = ols(x, y)
    except ValueError as e:
        raise DegeneratePredictorError(r_i) from e
    return Regression(a, b)
