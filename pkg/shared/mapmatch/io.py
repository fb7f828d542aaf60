"""
Matched-record CSV files: vehicle_id,timestamp,segment_id,offset_m,speed.
"""

from pathlib import Path

import pandas as pd

from shared.exceptions import DataFormatError
from shared.mapmatch.models import MatchedPoint

MATCHED_COLUMNS = ["vehicle_id", "timestamp", "segment_id", "offset_m", "speed"]


def traces_to_frame(traces: dict[str, list[MatchedPoint]]) -> pd.DataFrame:
    """Flatten traces into a DataFrame ordered by vehicle then time."""
    rows = [
        (p.vehicle_id, p.timestamp, p.segment_id, p.offset, p.speed)
        for vehicle in sorted(traces)
        for p in traces[vehicle]
    ]
    return pd.DataFrame(rows, columns=MATCHED_COLUMNS)


def write_matched(traces: dict[str, list[MatchedPoint]], path: str | Path) -> None:
    """Write matched traces as CSV."""
    traces_to_frame(traces).to_csv(path, index=False, float_format="%.4f")


def read_matched(path: str | Path) -> dict[str, list[MatchedPoint]]:
    """
    Read a matched-record CSV back into per-vehicle traces.

    Raises:
        DataFormatError: If required columns are missing
    """
    frame = pd.read_csv(path, dtype={"vehicle_id": str, "segment_id": str})
    missing = [col for col in MATCHED_COLUMNS if col not in frame.columns]
    if missing:
        raise DataFormatError(f"Matched file lacks columns {missing}", source=str(path))

    frame = frame.sort_values(["vehicle_id", "timestamp"], kind="stable")
    traces: dict[str, list[MatchedPoint]] = {}
    for row in frame.itertuples(index=False):
        traces.setdefault(row.vehicle_id, []).append(
            MatchedPoint(
                vehicle_id=row.vehicle_id,
                timestamp=float(row.timestamp),
                segment_id=row.segment_id,
                offset=float(row.offset_m),
                speed=float(row.speed),
            )
        )
    return traces
