"""
Grid spatial index over road segments.

The map is split into square cells starting at the top-left corner P0. A segment is
indexed in every cell its polyline, dilated by D_min, overlaps, so a point within
D_min of a segment always finds that segment in its own cell.
"""

import math
from dataclasses import dataclass

from shapely.geometry import box
from shapely.prepared import prep

from shared.roadnet.models import Point, RoadNet


@dataclass(frozen=True)
class GridIndex:
    """Immutable cell -> segment-id lookup."""

    origin: Point
    cell_size: float
    cells: dict[tuple[int, int], tuple[str, ...]]

    def cell_of(self, p: Point) -> tuple[int, int]:
        """(row, col) of the cell containing p; rows grow southwards."""
        row = math.floor((self.origin.y - p.y) / self.cell_size)
        col = math.floor((p.x - self.origin.x) / self.cell_size)
        return row, col

    def lookup(self, p: Point) -> tuple[str, ...]:
        """Segments indexed in p's cell."""
        return self.cells.get(self.cell_of(p), ())

    def neighborhood(self, p: Point) -> tuple[str, ...]:
        """Segments indexed in p's cell and its 8 neighbors, ascending ids."""
        row, col = self.cell_of(p)
        found: set[str] = set()
        for dr in (-1, 0, 1):
            for dc in (-1, 0, 1):
                found.update(self.cells.get((row + dr, col + dc), ()))
        return tuple(sorted(found))


def build_grid_index(net: RoadNet, cell_size: float, d_min: float) -> GridIndex:
    """
    Index every segment into the grid cells its D_min dilation overlaps.

    Args:
        net: Road net
        cell_size: Cell edge length in meters
        d_min: Outlier distance used as dilation radius

    Returns:
        GridIndex covering the net's bounding box
    """
    if cell_size <= 0:
        raise ValueError("cell_size must be positive")

    min_x, _, _, max_y = net.bounding_box()
    origin = Point(min_x - d_min, max_y + d_min)
    cells: dict[tuple[int, int], list[str]] = {}

    for seg in net:
        dilated = seg.line.buffer(d_min)
        prepared = prep(dilated)
        bx0, by0, bx1, by1 = dilated.bounds
        row0 = math.floor((origin.y - by1) / cell_size)
        row1 = math.floor((origin.y - by0) / cell_size)
        col0 = math.floor((bx0 - origin.x) / cell_size)
        col1 = math.floor((bx1 - origin.x) / cell_size)
        for row in range(row0, row1 + 1):
            for col in range(col0, col1 + 1):
                x0 = origin.x + col * cell_size
                y1 = origin.y - row * cell_size
                if prepared.intersects(box(x0, y1 - cell_size, x0 + cell_size, y1)):
                    cells.setdefault((row, col), []).append(seg.id)

    return GridIndex(
        origin=origin,
        cell_size=cell_size,
        cells={key: tuple(sorted(ids)) for key, ids in cells.items()},
    )
