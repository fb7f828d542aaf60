"""
Calculation intervals.

Interval j (1-based) spans [start + (j-1)T, start + jT); a timestamp exactly on a
boundary belongs to the later interval.
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class IntervalIndex:
    """Maps timestamps to calculation interval ordinals."""

    start_time: float
    interval_seconds: float

    def __post_init__(self) -> None:
        if self.interval_seconds <= 0:
            raise ValueError("interval_seconds must be positive")

    def interval_of(self, timestamp: float) -> int | None:
        """
        Interval ordinal containing a timestamp.

        Returns:
            1-based ordinal, or None for timestamps before the start
        """
        if timestamp < self.start_time:
            return None
        return math.floor((timestamp - self.start_time) / self.interval_seconds) + 1

    def bounds(self, j: int) -> tuple[float, float]:
        """Half-open [begin, end) of interval j."""
        begin = self.start_time + (j - 1) * self.interval_seconds
        return begin, begin + self.interval_seconds

    def midpoint(self, j: int) -> float:
        """Center time of interval j."""
        begin, end = self.bounds(j)
        return (begin + end) / 2.0

    def count_until(self, end_time: float) -> int:
        """Number of whole or partial intervals from start up to end_time."""
        if end_time <= self.start_time:
            return 0
        return math.ceil((end_time - self.start_time) / self.interval_seconds)
