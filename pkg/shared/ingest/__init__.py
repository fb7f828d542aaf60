"""
Record ingestion: CSV parsing, projection, interval bucketing and coverage.
"""

from shared.ingest.config import IngestSettings, get_ingest_settings
from shared.ingest.coverage import CoverageTable, coverage_count, coverage_summary, is_covered
from shared.ingest.intervals import IntervalIndex
from shared.ingest.projection import LocalProjection
from shared.ingest.records import ParseResult, Record, format_records, parse_records

__all__ = [
    "CoverageTable",
    "IngestSettings",
    "IntervalIndex",
    "LocalProjection",
    "ParseResult",
    "Record",
    "coverage_count",
    "coverage_summary",
    "format_records",
    "get_ingest_settings",
    "is_covered",
    "parse_records",
]
