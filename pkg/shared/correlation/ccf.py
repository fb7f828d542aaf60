"""
Windowed cross-correlation between segment speed vectors.

Lag alignment is done by slicing: the upstream slice ends k intervals before the
target slice. Intervals are 1-based.
"""

from typing import Protocol

import numpy as np

from shared.exceptions import DegenerateSeriesError, InsufficientHistoryError, VacantEntryError


class SeriesView(Protocol):
    """Anything exposing speed slices by segment and inclusive interval range."""

    def vector(self, segment_id: str, first: int, last: int) -> np.ndarray: ...


def cross_correlation(x: np.ndarray, y: np.ndarray) -> float:
    """
    Pearson correlation of two aligned, equal-length slices.

    Args:
        x: First slice
        y: Second slice

    Returns:
        Correlation in [-1, 1]

    Raises:
        DegenerateSeriesError: If either slice has zero standard deviation
        ValueError: If the slices differ in length or are shorter than 2
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("Slices must be one-dimensional and of equal length")
    if x.size < 2:
        raise ValueError("Slices need at least two entries")

    xc = x - x.mean()
    yc = y - y.mean()
    sxx = float(np.dot(xc, xc))
    syy = float(np.dot(yc, yc))
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateSeriesError()
    c = float(np.dot(xc, yc)) / np.sqrt(sxx * syy)
    return float(np.clip(c, -1.0, 1.0))


def populated_slice(series: SeriesView, segment_id: str, first: int, last: int) -> np.ndarray:
    """
    Slice X_seg(first..last) that must be fully populated.

    Raises:
        InsufficientHistoryError: If first < 1
        VacantEntryError: If any entry is vacant
    """
    if first < 1:
        raise InsufficientHistoryError(first)
    values = series.vector(segment_id, first, last)
    vacant = np.isnan(values)
    if vacant.any():
        raise VacantEntryError(segment_id, [first + int(i) for i in np.flatnonzero(vacant)])
    return values


def c_pre(r_i: str, r: str, n: int, w: int, k: int, series: SeriesView) -> float:
    """
    Correlation of r_i and r over the window preceding interval n.

    Correlates X_{r_i}(n-k-w .. n-k-1) with X_r(n-w .. n-1).
    """
    x = populated_slice(series, r_i, n - k - w, n - k - 1)
    y = populated_slice(series, r, n - w, n - 1)
    return cross_correlation(x, y)


def c_now(
    r_i: str, r: str, n: int, w: int, k: int, series: SeriesView, candidate: float
) -> float:
    """
    Correlation of r_i and r over the window ending at interval n.

    Correlates X_{r_i}(n-k-w+1 .. n-k) with X_r(n-w+1 .. n), where X_r(n) is
    replaced by ``candidate``.
    """
    x = populated_slice(series, r_i, n - k - w + 1, n - k)
    y = np.append(populated_slice(series, r, n - w + 1, n - 1), candidate)
    return cross_correlation(x, y)
