"""
Unit tests for calculation intervals and the local projection.
"""

import pytest

from shared.ingest.intervals import IntervalIndex
from shared.ingest.projection import LocalProjection
from shared.roadnet.models import Point


class TestIntervalIndex:
    """Tests for interval arithmetic."""

    def test_boundary_belongs_to_later_interval(self):
        """Test half-open interval convention."""
        index = IntervalIndex(1000.0, 80.0)

        assert index.interval_of(1000.0) == 1
        assert index.interval_of(1079.999) == 1
        assert index.interval_of(1080.0) == 2

    def test_before_start(self):
        """Test timestamps before the first interval."""
        assert IntervalIndex(1000.0, 80.0).interval_of(999.0) is None

    def test_bounds_and_midpoint(self):
        """Test interval span and center."""
        index = IntervalIndex(0.0, 90.0)

        assert index.bounds(3) == (180.0, 270.0)
        assert index.midpoint(3) == 225.0

    def test_count_until(self):
        """Test whole and partial intervals up to an end time."""
        index = IntervalIndex(0.0, 80.0)

        assert index.count_until(0.0) == 0
        assert index.count_until(80.0) == 1
        assert index.count_until(81.0) == 2

    def test_rejects_non_positive_length(self):
        """Test T must be positive."""
        with pytest.raises(ValueError):
            IntervalIndex(0.0, 0.0)


class TestLocalProjection:
    """Tests for the equirectangular projection."""

    def test_origin_maps_to_zero(self):
        """Test origin projects to (0, 0)."""
        projection = LocalProjection(114.05, 22.55)

        assert projection.forward(114.05, 22.55) == Point(0.0, 0.0)

    def test_north_is_positive_y(self):
        """Test one millidegree of latitude is about 111 m."""
        projection = LocalProjection(114.05, 22.55)

        p = projection.forward(114.05, 22.551)

        assert p.x == pytest.approx(0.0)
        assert p.y == pytest.approx(111.19, abs=0.05)

    def test_inverse(self):
        """Test forward then inverse returns the coordinates."""
        projection = LocalProjection(114.05, 22.55)

        lon, lat = projection.inverse(projection.forward(114.1, 22.6))

        assert lon == pytest.approx(114.1)
        assert lat == pytest.approx(22.6)
