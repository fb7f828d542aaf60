"""
Scalar random-walk Kalman filter.
"""

from collections.abc import Iterable

import numpy as np

from shared.speed.series import SpeedSeries


class KalmanFilter:
    """Random-walk state x_t = x_{t-1} + noise(q), observed with noise(r)."""

    def __init__(self, process_variance: float = 0.5, observation_variance: float = 1.0):
        """
        Initialize filter.

        Args:
            process_variance: q
            observation_variance: r
        """
        self.q = process_variance
        self.r = observation_variance
        self.x: float | None = None
        self.p = observation_variance

    def update(self, observation: float) -> float:
        """
        Fold one observation in.

        The first observation initializes the state with variance r.

        Returns:
            Posterior state estimate
        """
        if self.x is None:
            self.x = float(observation)
            self.p = self.r
            return self.x
        p_prior = self.p + self.q
        denominator = p_prior + self.r
        gain = 1.0 if denominator == 0.0 else p_prior / denominator
        self.x = self.x + gain * (float(observation) - self.x)
        self.p = (1.0 - gain) * p_prior
        return self.x

    def predict(self) -> float:
        """One-step prior estimate (the random walk keeps the state)."""
        if self.x is None:
            raise ValueError("Filter has no observation yet")
        return self.x

    def run(self, observations: Iterable[float]) -> float:
        """Update with every observation, then predict."""
        for z in observations:
            self.update(z)
        return self.predict()


def kalman_predict(
    segment_id: str,
    n: int,
    series: SpeedSeries,
    process_variance: float = 0.5,
    observation_variance: float = 1.0,
) -> float:
    """
    Predict X_segment(n+1) from the populated values of intervals 1..n.

    Raises:
        ValueError: If no interval up to n has a value
    """
    values = series.vector(segment_id, 1, n)
    values = values[~np.isnan(values)]
    if values.size == 0:
        raise ValueError(f"No observations of {segment_id} up to interval {n}")
    kf = KalmanFilter(process_variance, observation_variance)
    return max(0.0, kf.run(values))
