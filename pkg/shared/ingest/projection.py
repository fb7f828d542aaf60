"""
Local equirectangular projection between lon/lat and planar meters.

Adequate at city scale; keeps the rest of the engine projection-free.
"""

import math
from dataclasses import dataclass

from shared.roadnet.models import Point

EARTH_RADIUS_M = 6_371_008.8


@dataclass(frozen=True)
class LocalProjection:
    """Equirectangular projection around a fixed origin."""

    origin_lon: float
    origin_lat: float

    @property
    def _cos_lat(self) -> float:
        return math.cos(math.radians(self.origin_lat))

    def forward(self, lon: float, lat: float) -> Point:
        """Project lon/lat degrees to planar meters (x east, y north)."""
        x = EARTH_RADIUS_M * math.radians(lon - self.origin_lon) * self._cos_lat
        y = EARTH_RADIUS_M * math.radians(lat - self.origin_lat)
        return Point(x, y)

    def inverse(self, p: Point) -> tuple[float, float]:
        """Planar meters back to (lon, lat) degrees."""
        lon = self.origin_lon + math.degrees(p.x / (EARTH_RADIUS_M * self._cos_lat))
        lat = self.origin_lat + math.degrees(p.y / EARTH_RADIUS_M)
        return lon, lat
