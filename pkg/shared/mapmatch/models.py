"""
Data models for map matching results.
"""

import math
from dataclasses import dataclass

from shared.roadnet.models import NetPosition


@dataclass
class VehicleState:
    """Last successful match of a vehicle, used to narrow candidates."""

    vehicle_id: str
    last_segment: str | None = None
    last_timestamp: float = -math.inf


@dataclass(frozen=True, slots=True)
class MatchResult:
    """A point snapped to a segment."""

    segment_id: str
    distance: float
    offset: float
    strategy: str


@dataclass(frozen=True, slots=True)
class Outlier:
    """A point farther than D_min from every candidate; dropped by callers."""

    nearest_distance: float


@dataclass(frozen=True, slots=True)
class MatchedPoint:
    """A record after map matching."""

    vehicle_id: str
    timestamp: float
    segment_id: str
    offset: float
    speed: float

    @property
    def position(self) -> NetPosition:
        """On-net position of the point."""
        return NetPosition(self.segment_id, self.offset)
