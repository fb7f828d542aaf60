"""
Segment geometry helpers: central points and point-to-polyline projection.
"""

from shapely.geometry import Point as ShapelyPoint

from shared.roadnet.models import NetPosition, Point, RoadSegment


def point_at(seg: RoadSegment, offset: float) -> Point:
    """
    Point at a given arc length from the segment entrance.

    Args:
        seg: Road segment
        offset: Arc length in meters, clamped to [0, length]

    Returns:
        Planar point on the polyline
    """
    clamped = min(max(offset, 0.0), seg.length)
    located = seg.line.interpolate(clamped)
    return Point(located.x, located.y)


def central_point(seg: RoadSegment) -> Point:
    """
    Arc-length midpoint of the segment, walking entrance -> exit.

    Args:
        seg: Road segment

    Returns:
        The point at length/2 along the polyline
    """
    return point_at(seg, seg.length / 2.0)


def central_position(seg: RoadSegment) -> NetPosition:
    """Central point expressed as an on-net position."""
    return NetPosition(seg.id, seg.length / 2.0)


def project_point(seg: RoadSegment, p: Point) -> tuple[float, float]:
    """
    Project a point on a segment polyline.

    The distance is the minimum perpendicular distance to the polyline, clamped to
    its endpoints.

    Args:
        seg: Road segment
        p: Planar point

    Returns:
        (distance to polyline, arc-length offset of the nearest polyline point)
    """
    shapely_point = ShapelyPoint(p.x, p.y)
    return float(seg.line.distance(shapely_point)), float(seg.line.project(shapely_point))
