"""
Speed table files: interval,segment_id,speed_mps,provenance as CSV or JSON.
"""

import json
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Literal

import pandas as pd

from shared.exceptions import DataFormatError
from shared.speed.series import SpeedSeries

SPEED_COLUMNS = ["interval", "segment_id", "speed_mps", "provenance"]

TableFormat = Literal["csv", "json"]


def write_speed_table(
    series: SpeedSeries,
    path: str | Path,
    fmt: TableFormat = "csv",
    intervals: Iterable[int] | None = None,
) -> int:
    """
    Write populated cells of a series.

    Args:
        series: Speed series
        path: Output file
        fmt: csv or json
        intervals: Restrict output to these intervals

    Returns:
        Number of rows written
    """
    frame = series.to_frame(intervals)
    if fmt == "json":
        Path(path).write_text(json.dumps(frame.to_dict(orient="records"), indent=2))
    else:
        frame.to_csv(path, index=False, float_format="%.6f")
    return len(frame)


def read_speed_table(path: str | Path) -> pd.DataFrame:
    """
    Read a speed table written by write_speed_table.

    Raises:
        DataFormatError: If required columns are missing
    """
    path = Path(path)
    if path.suffix == ".json":
        frame = pd.DataFrame(json.loads(path.read_text()))
    else:
        frame = pd.read_csv(path, dtype={"segment_id": str, "provenance": str})
    missing = [col for col in SPEED_COLUMNS if col not in frame.columns]
    if missing:
        raise DataFormatError(f"Speed table lacks columns {missing}", source=str(path))
    return frame


def load_speed_series(
    path: str | Path, segment_ids: Sequence[str], n_intervals: int | None = None
) -> SpeedSeries:
    """Read a speed table into a series over the given segments."""
    return SpeedSeries.from_frame(read_speed_table(path), segment_ids, n_intervals)
