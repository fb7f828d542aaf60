"""
Ordinary Kriging with a fitted exponential variogram.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit
from scipy.spatial.distance import cdist, pdist

from shared.baselines.knn import KnnModel
from shared.baselines.spatial import CentralPoints
from shared.config.logging import get_logger
from shared.exceptions import NoNeighborsError, SingularSystemError
from shared.speed.series import SpeedSeries

logger = get_logger(__name__)


def _exponential(h: np.ndarray, nugget: float, partial_sill: float, range_: float) -> np.ndarray:
    return nugget + partial_sill * (1.0 - np.exp(-h / range_))


@dataclass(frozen=True, slots=True)
class Variogram:
    """Exponential variogram; gamma(0) = 0 exactly."""

    nugget: float
    sill: float
    range_: float

    def __post_init__(self) -> None:
        if self.nugget < 0 or self.sill < self.nugget or self.range_ <= 0:
            raise ValueError("Variogram needs nugget >= 0, sill >= nugget, range > 0")

    def __call__(self, h: np.ndarray) -> np.ndarray:
        h = np.asarray(h, dtype=float)
        gamma = _exponential(h, self.nugget, self.sill - self.nugget, self.range_)
        return np.where(h == 0.0, 0.0, gamma)


def empirical_semivariogram(
    xy: np.ndarray, z: np.ndarray, n_lags: int
) -> tuple[np.ndarray, np.ndarray]:
    """
    Binned semivariances up to half the largest pairwise distance.

    Returns:
        (bin mean distances, bin mean semivariances), empty bins omitted
    """
    distances = pdist(xy)
    z = np.asarray(z, dtype=float)
    semivariances = pdist(z[:, None], metric="sqeuclidean") / 2.0
    if distances.size == 0:
        return np.empty(0), np.empty(0)
    max_lag = distances.max() / 2.0
    edges = np.linspace(0.0, max_lag, n_lags + 1)
    which = np.digitize(distances, edges[1:-1])
    inside = distances <= max_lag
    lags, gammas = [], []
    for b in range(n_lags):
        mask = inside & (which == b)
        if mask.any():
            lags.append(distances[mask].mean())
            gammas.append(semivariances[mask].mean())
    return np.array(lags), np.array(gammas)


def fit_variogram(xy: np.ndarray, z: np.ndarray, n_lags: int = 12) -> Variogram:
    """
    Least-squares exponential variogram fit.

    Raises:
        SingularSystemError: If too few bins exist or the fit fails
    """
    lags, gammas = empirical_semivariogram(xy, z, n_lags)
    if lags.size < 3:
        raise SingularSystemError("Too few variogram bins to fit")
    p0 = [0.0, max(float(np.var(z)), 1e-6), max(float(lags.max()) / 3.0, 1e-3)]
    try:
        params, _ = curve_fit(
            _exponential,
            lags,
            gammas,
            p0=p0,
            bounds=([0.0, 0.0, 1e-3], [np.inf, np.inf, np.inf]),
            maxfev=5000,
        )
    except (RuntimeError, ValueError) as e:
        raise SingularSystemError(f"Variogram fit failed: {e}") from e
    nugget, partial_sill, range_ = (float(p) for p in params)
    return Variogram(nugget, nugget + partial_sill, range_)


def kriging_weights(xy: np.ndarray, target: np.ndarray, variogram: Variogram) -> np.ndarray:
    """
    Ordinary Kriging weights at ``target``.

    Solves [[Gamma, 1], [1^T, 0]] [lambda, mu] = [gamma_0, 1].

    Raises:
        SingularSystemError: If the system cannot be solved or violates unbiasedness
    """
    m = xy.shape[0]
    system = np.zeros((m + 1, m + 1))
    system[:m, :m] = variogram(cdist(xy, xy))
    system[:m, m] = 1.0
    system[m, :m] = 1.0
    rhs = np.ones(m + 1)
    rhs[:m] = variogram(cdist(xy, target[None, :]).ravel())
    try:
        solution = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as e:
        raise SingularSystemError() from e
    weights = solution[:m]
    if not np.all(np.isfinite(weights)) or not np.isclose(weights.sum(), 1.0, atol=1e-8):
        raise SingularSystemError()
    return weights


class KrigingModel:
    """Variogram fitted once per interval; queries fall back to KNN on failure."""

    def __init__(
        self,
        series: SpeedSeries,
        n: int,
        points: CentralPoints,
        n_lags: int = 12,
        n_closest: int = 16,
        knn_k: int = 4,
    ):
        values = series.column(n)
        valid = ~np.isnan(values)
        self.ids = np.asarray(points.segment_ids)[valid]
        self.xy = points.xy[valid]
        self.values = values[valid]
        self.points = points
        self.n = n
        self.n_closest = n_closest
        self.knn = KnnModel(series, n, points, knn_k)
        self.variogram: Variogram | None = None
        if self.values.size >= 3 and np.ptp(self.values) > 0:
            try:
                self.variogram = fit_variogram(self.xy, self.values, n_lags)
            except SingularSystemError as e:
                logger.debug("variogram_fit_failed", n=n, error=e.message)

    def estimate(self, segment_id: str) -> float:
        """
        Ordinary Kriging estimate at cp(segment), the segment itself excluded.

        Raises:
            NoNeighborsError: If no other segment has a value
        """
        mask = self.ids != segment_id
        if not mask.any():
            raise NoNeighborsError(segment_id, self.n)
        values = self.values[mask]
        if np.ptp(values) == 0.0:
            return float(values[0])
        if self.variogram is None or mask.sum() < 3:
            return self.knn.estimate(segment_id)

        target = self.points.of(segment_id)
        xy = self.xy[mask]
        distances = np.hypot(*(xy - target).T)
        if (distances == 0.0).any():
            return float(values[distances == 0.0].mean())
        nearest = np.argsort(distances, kind="stable")[: self.n_closest]
        try:
            weights = kriging_weights(xy[nearest], target, self.variogram)
        except SingularSystemError:
            return self.knn.estimate(segment_id)
        return float(max(0.0, np.dot(weights, values[nearest])))


def kriging_estimate(
    segment_id: str,
    n: int,
    series: SpeedSeries,
    points: CentralPoints,
    n_lags: int = 12,
    n_closest: int = 16,
) -> float:
    """
    Ordinary Kriging estimate of X_segment(n) from the other segments valued at n.

    Falls back to KNN when the variogram or the Kriging system is singular.
    """
    return KrigingModel(series, n, points, n_lags, n_closest).estimate(segment_id)
