"""
Unit tests for road net data model.

Tests segment validation, adjacency derivation and lookups.
"""

import math

import pytest

from shared.exceptions import DataFormatError, UnknownSegmentError
from shared.roadnet.models import Point, RoadNet, RoadSegment
from tests.builders import chain_net, straight_segment


class TestPoint:
    """Tests for planar points."""

    def test_distance(self):
        """Test Euclidean distance."""
        assert Point(0, 0).distance_to(Point(3, 4)) == 5.0

    @pytest.mark.parametrize("x,y", [(math.nan, 0.0), (0.0, math.inf)])
    def test_rejects_non_finite(self, x, y):
        """Test non-finite coordinates are rejected."""
        with pytest.raises(DataFormatError):
            Point(x, y)


class TestRoadSegment:
    """Tests for segment validation."""

    def test_length_sums_polyline_pieces(self):
        """Test length of a two-piece polyline."""
        seg = RoadSegment("a", (Point(0, 0), Point(60, 0), Point(60, 40)), "v0", "v1")

        assert seg.length == pytest.approx(100.0)

    def test_single_point_rejected(self):
        """Test polyline with one point is rejected."""
        with pytest.raises(DataFormatError):
            RoadSegment("a", (Point(0, 0),), "v0", "v1")

    def test_zero_length_rejected(self):
        """Test polyline with coincident points is rejected."""
        with pytest.raises(DataFormatError):
            RoadSegment("a", (Point(1, 1), Point(1, 1)), "v0", "v1")


class TestRoadNet:
    """Tests for net construction and adjacency."""

    def test_duplicate_ids_rejected(self):
        """Test two segments with the same id."""
        segments = [
            straight_segment("a", (0, 0), (10, 0), "v0", "v1"),
            straight_segment("a", (10, 0), (20, 0), "v1", "v2"),
        ]

        with pytest.raises(DataFormatError, match="Duplicate"):
            RoadNet.from_segments(segments)

    def test_chain_adjacency(self):
        """Test outward and inbound neighbors along a chain."""
        net = chain_net([100, 100, 100])

        assert net.outward_neighbors("s0") == ("s1",)
        assert net.outward_neighbors("s2") == ()
        assert net.inbound["s1"] == ("s0",)
        assert net.inbound["s0"] == ()

    def test_adjacency_reconstructible_from_vertices(self):
        """Test adjacency equals the entrance/exit relation."""
        from shared.simgen.network import generate_grid_net

        net = generate_grid_net(3, 3, 200.0)

        for seg in net:
            expected = tuple(sorted(o.id for o in net if o.entrance == seg.exit))
            assert net.outward_neighbors(seg.id) == expected

    def test_segment_ids_sorted(self):
        """Test ids come out in ascending order whatever the input order."""
        segments = [
            straight_segment("b", (10, 0), (20, 0), "v1", "v2"),
            straight_segment("a", (0, 0), (10, 0), "v0", "v1"),
        ]
        net = RoadNet.from_segments(segments)

        assert net.segment_ids == ("a", "b")
        assert len(net) == 2
        assert "a" in net

    def test_unknown_segment(self):
        """Test lookup of an id outside the net."""
        net = chain_net([100])

        with pytest.raises(UnknownSegmentError) as exc_info:
            net.segment("missing")
        assert exc_info.value.error_code == "UNKNOWN_SEGMENT"

    def test_bounding_box(self):
        """Test bounding box spans all polyline points."""
        net = chain_net([100, 50])

        assert net.bounding_box() == (0.0, 0.0, 150.0, 0.0)

    def test_vertex_distances(self):
        """Test memoized intersection distances."""
        net = chain_net([100, 50, 25])

        lengths = net.vertex_distances("v0")

        assert lengths["v3"] == pytest.approx(175.0)
        assert net.vertex_distances("v0") is lengths
