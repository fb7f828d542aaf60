"""
Directed road net: segments, geometry, network distances and upstream areas.
"""

from shared.roadnet.distance import (
    UpstreamEntry,
    cp_distance,
    intersection_distance,
    network_distance,
    upstream_set,
)
from shared.roadnet.geometry import central_point, central_position, point_at, project_point
from shared.roadnet.loader import load_roadnet, parse_roadnet, roadnet_to_document, save_roadnet
from shared.roadnet.models import NetPosition, Point, RoadNet, RoadSegment

__all__ = [
    "NetPosition",
    "Point",
    "RoadNet",
    "RoadSegment",
    "UpstreamEntry",
    "central_point",
    "central_position",
    "cp_distance",
    "intersection_distance",
    "load_roadnet",
    "network_distance",
    "parse_roadnet",
    "point_at",
    "project_point",
    "roadnet_to_document",
    "save_roadnet",
    "upstream_set",
]
