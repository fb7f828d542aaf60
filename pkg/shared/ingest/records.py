"""
Crowdsensed record parsing.

Input is CSV with header ``vehicle_id,timestamp,lon,lat,speed``. Malformed lines are
skipped and counted rather than aborting the stream.
"""

import csv
import math
from collections.abc import Iterable
from dataclasses import dataclass, field

from shared.config.logging import get_logger
from shared.exceptions import DataFormatError
from shared.ingest.projection import LocalProjection
from shared.observability.metrics import records_parsed_total
from shared.roadnet.models import Point

logger = get_logger(__name__)

RECORD_HEADER = ("vehicle_id", "timestamp", "lon", "lat", "speed")

SPEED_FACTORS = {
    "mps": 1.0,
    "kmh": 1000.0 / 3600.0,
    "mph": 1609.344 / 3600.0,
}


@dataclass(frozen=True, slots=True)
class Record:
    """One crowdsensed sample, position already projected to meters."""

    vehicle_id: str
    timestamp: float
    position: Point
    speed: float


@dataclass
class ParseResult:
    """Outcome of parsing a record stream."""

    records: list[Record] = field(default_factory=list)
    skipped: int = 0
    duplicates: int = 0
    diagnostics: list[str] = field(default_factory=list)

    @property
    def count(self) -> int:
        """Number of parsed records."""
        return len(self.records)


def parse_records(
    lines: Iterable[str],
    projection: LocalProjection,
    speed_unit: str = "mps",
    max_diagnostics: int = 50,
) -> ParseResult:
    """
    Parse CSV record lines in input order.

    Args:
        lines: Text lines including the header
        projection: Projection from lon/lat to planar meters
        speed_unit: Unit of the speed column (mps, kmh, mph)
        max_diagnostics: Cap on retained per-line diagnostics

    Returns:
        ParseResult with records, skip count and diagnostics

    Raises:
        DataFormatError: If the stream is non-empty but lacks the header
    """
    if speed_unit not in SPEED_FACTORS:
        raise DataFormatError(f"Unknown speed unit: {speed_unit}")
    factor = SPEED_FACTORS[speed_unit]

    result = ParseResult()
    seen: set[tuple[str, float]] = set()
    header_seen = False

    for line_no, row in enumerate(csv.reader(lines), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue

        if not header_seen:
            if tuple(cell.strip().lower() for cell in row) != RECORD_HEADER:
                raise DataFormatError(
                    f"Missing header, expected {','.join(RECORD_HEADER)}", source=f"line {line_no}"
                )
            header_seen = True
            continue

        try:
            record = _parse_row(row, projection, factor)
        except (ValueError, DataFormatError) as e:
            result.skipped += 1
            if len(result.diagnostics) < max_diagnostics:
                result.diagnostics.append(f"line {line_no}: {e}")
            continue

        key = (record.vehicle_id, record.timestamp)
        if key in seen:
            result.duplicates += 1
            continue
        seen.add(key)
        result.records.append(record)

    records_parsed_total.labels(status="ok").inc(result.count)
    records_parsed_total.labels(status="skipped").inc(result.skipped)
    records_parsed_total.labels(status="duplicate").inc(result.duplicates)

    if result.skipped:
        logger.warning("records_skipped", skipped=result.skipped, first=result.diagnostics[:3])
    logger.info("records_parsed", count=result.count, duplicates=result.duplicates)
    return result


def _parse_row(row: list[str], projection: LocalProjection, factor: float) -> Record:
    if len(row) != len(RECORD_HEADER):
        raise ValueError(f"expected {len(RECORD_HEADER)} fields, got {len(row)}")

    vehicle_id = row[0].strip()
    if not vehicle_id:
        raise ValueError("empty vehicle id")
    timestamp = float(row[1])
    lon, lat = float(row[2]), float(row[3])
    speed = float(row[4]) * factor

    if not math.isfinite(timestamp):
        raise ValueError("non-finite timestamp")
    if not math.isfinite(speed) or speed < 0:
        raise ValueError(f"invalid speed {row[4]}")

    return Record(vehicle_id, timestamp, projection.forward(lon, lat), speed)


def format_records(records: Iterable[Record], projection: LocalProjection) -> list[str]:
    """Render records back to CSV lines (header first), speeds in m/s."""
    lines = [",".join(RECORD_HEADER)]
    for rec in records:
        lon, lat = projection.inverse(rec.position)
        lines.append(f"{rec.vehicle_id},{rec.timestamp:.3f},{lon:.8f},{lat:.8f},{rec.speed:.4f}")
    return lines
