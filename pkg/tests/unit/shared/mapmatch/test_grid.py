"""
Unit tests for the grid spatial index.
"""

import numpy as np
import pytest

from shared.mapmatch.grid import build_grid_index
from shared.roadnet.geometry import project_point
from shared.roadnet.models import Point
from shared.simgen.network import generate_grid_net


@pytest.fixture(scope="module")
def net():
    """3 x 4 grid with 200 m blocks."""
    return generate_grid_net(3, 4, 200.0)


class TestGridIndex:
    """Tests for build_grid_index and GridIndex."""

    @pytest.mark.parametrize("cell_size", [50.0, 130.0, 1000.0])
    def test_every_nearby_segment_in_own_cell(self, net, cell_size):
        """Test a point within D_min of a segment finds it in its own cell."""
        d_min = 30.0
        index = build_grid_index(net, cell_size, d_min)
        min_x, min_y, max_x, max_y = net.bounding_box()
        rng = np.random.default_rng(3)

        for x, y in rng.uniform((min_x - 40, min_y - 40), (max_x + 40, max_y + 40), (300, 2)):
            p = Point(float(x), float(y))
            cell = set(index.lookup(p))
            for seg in net:
                if project_point(seg, p)[0] <= d_min:
                    assert seg.id in cell

    def test_cell_rows_grow_southwards(self, net):
        """Test row and column numbering from the top-left origin."""
        index = build_grid_index(net, 100.0, 30.0)
        o = index.origin

        assert index.cell_of(Point(o.x + 1, o.y - 1)) == (0, 0)
        assert index.cell_of(Point(o.x + 150, o.y - 250)) == (2, 1)

    def test_neighborhood_sorted_superset(self, net):
        """Test the 3 x 3 neighborhood contains the own cell, in id order."""
        index = build_grid_index(net, 100.0, 30.0)
        p = Point(200.0, -200.0)

        around = index.neighborhood(p)

        assert set(index.lookup(p)) <= set(around)
        assert list(around) == sorted(around)

    def test_far_point_has_no_candidates(self, net):
        """Test lookups outside the indexed area."""
        index = build_grid_index(net, 100.0, 30.0)

        assert index.lookup(Point(10_000.0, 10_000.0)) == ()

    def test_rejects_non_positive_cell(self, net):
        """Test cell size validation."""
        with pytest.raises(ValueError):
            build_grid_index(net, 0.0, 30.0)
