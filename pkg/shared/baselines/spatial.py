"""
Central-point coordinates of all segments, shared by the spatial baselines.
"""

import numpy as np

from shared.exceptions import UnknownSegmentError
from shared.roadnet.geometry import central_point
from shared.roadnet.models import RoadNet


class CentralPoints:
    """Planar coordinates of every segment's central point, in net order."""

    def __init__(self, net: RoadNet):
        self.segment_ids = net.segment_ids
        self._row = {sid: i for i, sid in enumerate(self.segment_ids)}
        points = [central_point(net.segment(sid)) for sid in self.segment_ids]
        self.xy = np.array([(p.x, p.y) for p in points], dtype=float).reshape(-1, 2)

    def __len__(self) -> int:
        return len(self.segment_ids)

    def row(self, segment_id: str) -> int:
        try:
            return self._row[segment_id]
        except KeyError as e:
            raise UnknownSegmentError(segment_id) from e

    def of(self, segment_id: str) -> np.ndarray:
        """(x, y) of one segment's central point."""
        return self.xy[self.row(segment_id)]
