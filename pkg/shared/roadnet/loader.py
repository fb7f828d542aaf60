"""
JSON road net documents.

A document is either a bare array of segments or an object with a ``segments``
array and an optional ``vertices`` array. Each segment is
``{"id", "polyline": [[x, y], ...], "entrance", "exit"}`` in projected meters.
"""

import json
from pathlib import Path
from typing import Any

from shared.config.logging import get_logger
from shared.exceptions import DataFormatError
from shared.roadnet.models import Point, RoadNet, RoadSegment

logger = get_logger(__name__)


def _parse_segment(raw: Any, position: int) -> RoadSegment:
    if not isinstance(raw, dict):
        raise DataFormatError(f"Segment #{position} is not an object")
    missing = [key for key in ("id", "polyline", "entrance", "exit") if key not in raw]
    if missing:
        raise DataFormatError(f"Segment #{position} is missing {', '.join(missing)}")

    try:
        polyline = tuple(Point(float(x), float(y)) for x, y in raw["polyline"])
    except (TypeError, ValueError) as e:
        raise DataFormatError(f"Segment {raw['id']} has a malformed polyline") from e

    return RoadSegment(
        id=str(raw["id"]),
        polyline=polyline,
        entrance=str(raw["entrance"]),
        exit=str(raw["exit"]),
    )


def parse_roadnet(document: Any) -> RoadNet:
    """
    Build a road net from a decoded JSON document.

    Args:
        document: Decoded JSON (list of segments or object with ``segments``)

    Returns:
        Validated RoadNet

    Raises:
        DataFormatError: On duplicate ids, malformed segments or dangling vertices
    """
    declared: set[str] | None = None
    if isinstance(document, dict):
        raw_segments = document.get("segments")
        if "vertices" in document:
            declared = {str(v) for v in document["vertices"]}
    else:
        raw_segments = document
    if not isinstance(raw_segments, list):
        raise DataFormatError("Road net document has no segment array")

    net = RoadNet.from_segments(_parse_segment(raw, i) for i, raw in enumerate(raw_segments))

    if declared is not None:
        undeclared = sorted(net.vertices - declared)
        if undeclared:
            raise DataFormatError(f"Segments reference undeclared vertices: {undeclared[:5]}")
        dangling = sorted(declared - net.vertices)
        if dangling:
            raise DataFormatError(f"Dangling vertices with no segment: {dangling[:5]}")

    return net


def load_roadnet(path: str | Path) -> RoadNet:
    """
    Load a road net JSON file.

    Args:
        path: File path

    Returns:
        RoadNet
    """
    path = Path(path)
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise DataFormatError(f"Invalid JSON: {e}", source=str(path)) from e

    net = parse_roadnet(document)
    logger.info("roadnet_loaded", path=str(path), segments=len(net), vertices=len(net.vertices))
    return net


def roadnet_to_document(net: RoadNet) -> dict[str, Any]:
    """Serialize a net to the JSON document layout."""
    return {
        "vertices": sorted(net.vertices),
        "segments": [
            {
                "id": seg.id,
                "polyline": [[p.x, p.y] for p in seg.polyline],
                "entrance": seg.entrance,
                "exit": seg.exit,
            }
            for seg in net
        ],
    }


def save_roadnet(net: RoadNet, path: str | Path) -> None:
    """Write a net as a JSON document."""
    Path(path).write_text(json.dumps(roadnet_to_document(net), indent=2), encoding="utf-8")
