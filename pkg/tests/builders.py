"""
Small road nets and traces shared by the test suite.
"""

from shared.mapmatch.models import MatchedPoint
from shared.roadnet.models import Point, RoadNet, RoadSegment


def straight_segment(
    segment_id: str, start: tuple[float, float], end: tuple[float, float], entrance: str, exit: str
) -> RoadSegment:
    """Two-point segment."""
    return RoadSegment(segment_id, (Point(*start), Point(*end)), entrance, exit)


def chain_net(lengths: list[float], prefix: str = "s") -> RoadNet:
    """
    Segments laid end to end along the x axis: s0 runs v0 -> v1, s1 runs v1 -> v2, ...
    """
    segments = []
    x = 0.0
    for i, length in enumerate(lengths):
        segments.append(
            straight_segment(f"{prefix}{i}", (x, 0.0), (x + length, 0.0), f"v{i}", f"v{i + 1}")
        )
        x += length
    return RoadNet.from_segments(segments)


def ring_net(count: int, length: float = 100.0) -> RoadNet:
    """Directed cycle of ``count`` segments; only the topology closes, the geometry zigzags."""
    segments = []
    for i in range(count):
        start = (i * length, 0.0 if i % 2 == 0 else 1.0)
        end = ((i + 1) * length, 1.0 if i % 2 == 0 else 0.0)
        segments.append(
            straight_segment(f"r{i}", start, end, f"c{i}", f"c{(i + 1) % count}")
        )
    return RoadNet.from_segments(segments)


def drive(
    net: RoadNet,
    vehicle_id: str,
    path: list[str],
    speed: float,
    start_time: float,
    period: float,
    start_offset: float = 0.0,
) -> list[MatchedPoint]:
    """
    Matched points of a vehicle driving ``path`` at constant speed, one report
    every ``period`` seconds, starting ``start_offset`` meters into the first segment.
    """
    points = []
    total = sum(net.segment(sid).length for sid in path)
    travelled = start_offset
    t = start_time
    while travelled < total:
        remaining = travelled
        for sid in path:
            length = net.segment(sid).length
            if remaining < length:
                points.append(MatchedPoint(vehicle_id, t, sid, remaining, speed))
                break
            remaining -= length
        travelled += speed * period
        t += period
    return points
