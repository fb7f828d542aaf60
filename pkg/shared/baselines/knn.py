"""
Inverse-distance-weighted K nearest neighbors over central points.
"""

import numpy as np
from scipy.spatial import cKDTree

from shared.baselines.spatial import CentralPoints
from shared.exceptions import NoNeighborsError
from shared.speed.series import SpeedSeries


def idw_weights(distances: np.ndarray) -> np.ndarray:
    """Normalized 1/d weights; samples at distance 0 share all weight."""
    distances = np.asarray(distances, dtype=float)
    exact = distances == 0.0
    if exact.any():
        return exact / exact.sum()
    inverse = 1.0 / distances
    return inverse / inverse.sum()


class KnnModel:
    """KNN over the valued segments of one interval."""

    def __init__(self, series: SpeedSeries, n: int, points: CentralPoints, k: int = 4):
        values = series.column(n)
        self.valid = ~np.isnan(values)
        self.ids = np.asarray(points.segment_ids)[self.valid]
        self.values = values[self.valid]
        self.points = points
        self.k = k
        self.n = n
        self.tree = cKDTree(points.xy[self.valid]) if self.values.size else None

    def estimate(self, segment_id: str) -> float:
        """
        Estimate for one segment from its K nearest valued neighbors (itself excluded).

        Raises:
            NoNeighborsError: If no other segment has a value
        """
        target = self.points.of(segment_id)
        available = self.values.size - int(segment_id in self.ids)
        if self.tree is None or available < 1:
            raise NoNeighborsError(segment_id, self.n)
        kk = min(self.k + 1, self.values.size)
        distances, idx = self.tree.query(target, k=kk)
        distances = np.atleast_1d(distances)
        idx = np.atleast_1d(idx)
        keep = self.ids[idx] != segment_id
        distances, idx = distances[keep][: self.k], idx[keep][: self.k]
        return float(np.dot(idw_weights(distances), self.values[idx]))


def knn_estimate(
    segment_id: str, n: int, series: SpeedSeries, points: CentralPoints, k: int = 4
) -> float:
    """
    IDW mean of the K nearest segments valued at interval n.

    Fewer than K valued segments uses all of them.

    Raises:
        NoNeighborsError: If no other segment has a value at n
    """
    return KnnModel(series, n, points, k).estimate(segment_id)
