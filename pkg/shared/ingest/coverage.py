"""
Coverage statistics.

A segment is covered in interval j when at least N_thr usable records matched to it
fall in that interval; N_c counts the covered segments of an interval.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
import pandas as pd

from shared.exceptions import UnknownSegmentError
from shared.ingest.intervals import IntervalIndex


@dataclass
class CoverageTable:
    """Per (segment, interval) record counts n_ij plus the threshold N_thr."""

    segment_ids: tuple[str, ...]
    counts: np.ndarray
    nthr: int

    def __post_init__(self) -> None:
        self._row = {sid: i for i, sid in enumerate(self.segment_ids)}

    @classmethod
    def build(
        cls,
        observations: Iterable[tuple[str, float]],
        index: IntervalIndex,
        segment_ids: Sequence[str],
        n_intervals: int,
        nthr: int,
    ) -> "CoverageTable":
        """
        Count matched records per segment and interval.

        Args:
            observations: (segment id, timestamp) of every matched record
            index: Interval index
            segment_ids: All segment ids of the net
            n_intervals: Number of intervals to tabulate
            nthr: Coverage threshold

        Returns:
            CoverageTable
        """
        ids = tuple(segment_ids)
        row = {sid: i for i, sid in enumerate(ids)}
        counts = np.zeros((len(ids), n_intervals), dtype=np.int64)
        for segment_id, timestamp in observations:
            j = index.interval_of(timestamp)
            if j is None or j > n_intervals or segment_id not in row:
                continue
            counts[row[segment_id], j - 1] += 1
        return cls(segment_ids=ids, counts=counts, nthr=nthr)

    @property
    def n_intervals(self) -> int:
        """Number of tabulated intervals."""
        return int(self.counts.shape[1])

    def count(self, segment_id: str, j: int) -> int:
        """n_ij for a segment and interval."""
        try:
            return int(self.counts[self._row[segment_id], j - 1])
        except KeyError as e:
            raise UnknownSegmentError(segment_id) from e

    def with_threshold(self, nthr: int) -> "CoverageTable":
        """Same counts under a different N_thr."""
        return CoverageTable(segment_ids=self.segment_ids, counts=self.counts, nthr=nthr)


def is_covered(segment_id: str, j: int, table: CoverageTable) -> bool:
    """True iff n_ij >= N_thr."""
    return table.count(segment_id, j) >= table.nthr


def coverage_count(j: int, table: CoverageTable) -> int:
    """N_c: number of segments covered in interval j."""
    return int(np.count_nonzero(table.counts[:, j - 1] >= table.nthr))


def coverage_summary(table: CoverageTable) -> pd.DataFrame:
    """
    Per-interval coverage statistics.

    Returns:
        DataFrame with columns interval, records, covered, coverage_ratio
    """
    covered = (table.counts >= table.nthr).sum(axis=0)
    n_segments = max(len(table.segment_ids), 1)
    return pd.DataFrame(
        {
            "interval": np.arange(1, table.n_intervals + 1),
            "records": table.counts.sum(axis=0),
            "covered": covered,
            "coverage_ratio": covered / n_segments,
        }
    )
