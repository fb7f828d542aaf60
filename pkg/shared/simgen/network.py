"""
Manhattan grid nets with paired one-way segments.
"""

import math

from shared.roadnet.models import Point, RoadNet, RoadSegment


def vertex_id(row: int, col: int) -> str:
    return f"v{row}_{col}"


def grid_segment_count(rows: int, cols: int) -> int:
    """2 (rows (cols-1) + cols (rows-1))."""
    return 2 * (rows * (cols - 1) + cols * (rows - 1))


def _directed(a: Point, b: Point, lane_offset: float, setback: float) -> tuple[Point, Point]:
    length = a.distance_to(b)
    dx, dy = (b.x - a.x) / length, (b.y - a.y) / length
    # right-hand normal of the travel direction
    nx_, ny_ = dy, -dx
    start = Point(a.x + dx * setback + nx_ * lane_offset, a.y + dy * setback + ny_ * lane_offset)
    end = Point(b.x - dx * setback + nx_ * lane_offset, b.y - dy * setback + ny_ * lane_offset)
    return start, end


def generate_grid_net(
    rows: int,
    cols: int,
    edge_length: float,
    lane_offset: float = 5.0,
    setback: float = 10.0,
) -> RoadNet:
    """
    Grid of rows x cols intersections with one segment per block and direction.

    Row r lies at y = -r * edge_length (rows grow southward), column c at
    x = c * edge_length. Each direction is shifted to its right by ``lane_offset``
    and pulled back ``setback`` meters from both intersections.

    Raises:
        ValueError: If the grid is smaller than 2 x 2 or the setback swallows a block
    """
    if rows < 2 or cols < 2:
        raise ValueError("Grid needs at least 2 rows and 2 columns")
    if not math.isfinite(edge_length) or 2 * setback >= edge_length:
        raise ValueError("setback must be less than half the edge length")

    def location(row: int, col: int) -> Point:
        return Point(col * edge_length, -row * edge_length)

    links: list[tuple[tuple[int, int], tuple[int, int]]] = []
    for row in range(rows):
        for col in range(cols):
            if col + 1 < cols:
                links.append(((row, col), (row, col + 1)))
                links.append(((row, col + 1), (row, col)))
            if row + 1 < rows:
                links.append(((row, col), (row + 1, col)))
                links.append(((row + 1, col), (row, col)))

    width = max(4, len(str(len(links) - 1)))
    segments = []
    for i, (a, b) in enumerate(links):
        start, end = _directed(location(*a), location(*b), lane_offset, setback)
        segments.append(
            RoadSegment(
                id=f"s{i:0{width}d}",
                polyline=(start, end),
                entrance=vertex_id(*a),
                exit=vertex_id(*b),
            )
        )
    return RoadNet.from_segments(segments)
