"""
Per-segment travel speed vectors with explicit vacancies and provenance.
"""

from collections.abc import Iterable, Sequence
from enum import IntEnum

import numpy as np
import pandas as pd

from shared.exceptions import UnknownSegmentError


class Provenance(IntEnum):
    """How a (segment, interval) cell got its value."""

    VACANT = 0
    MEASURED = 1
    COMPLETED = 2
    INITIALIZED = 3
    FALLBACK = 4
    PREDICTED = 5

    @property
    def label(self) -> str:
        """Lower-case name used in output tables."""
        return self.name.lower()


class SpeedSeries:
    """
    Travel speed matrix X[segment, interval] in m/s.

    Intervals are 1-based in every public method. Vacant cells hold NaN and
    provenance VACANT.
    """

    def __init__(
        self,
        segment_ids: Sequence[str],
        n_intervals: int,
        values: np.ndarray | None = None,
        provenance: np.ndarray | None = None,
    ):
        """
        Initialize series.

        Args:
            segment_ids: Segment ids (row order)
            n_intervals: Number of interval columns
            values: Optional initial values, NaN for vacancies
            provenance: Optional initial provenance codes
        """
        self.segment_ids = tuple(segment_ids)
        self._row = {sid: i for i, sid in enumerate(self.segment_ids)}
        shape = (len(self.segment_ids), n_intervals)
        self.values = np.full(shape, np.nan) if values is None else np.asarray(values, dtype=float)
        self.provenance = (
            np.zeros(shape, dtype=np.int8)
            if provenance is None
            else np.asarray(provenance, dtype=np.int8)
        )
        if self.values.shape != shape or self.provenance.shape != shape:
            raise ValueError(f"Series arrays must have shape {shape}")

    @property
    def n_intervals(self) -> int:
        """Number of interval columns."""
        return int(self.values.shape[1])

    def row(self, segment_id: str) -> int:
        """Row index of a segment."""
        try:
            return self._row[segment_id]
        except KeyError as e:
            raise UnknownSegmentError(segment_id) from e

    def value(self, segment_id: str, j: int) -> float | None:
        """Speed at interval j, None when vacant."""
        v = self.values[self.row(segment_id), j - 1]
        return None if np.isnan(v) else float(v)

    def provenance_of(self, segment_id: str, j: int) -> Provenance:
        """Provenance of one cell."""
        return Provenance(int(self.provenance[self.row(segment_id), j - 1]))

    def set(self, segment_id: str, j: int, speed: float, provenance: Provenance) -> None:
        """Write one cell."""
        if not np.isfinite(speed) or speed < 0:
            raise ValueError(f"Invalid speed {speed} for {segment_id} at {j}")
        i = self.row(segment_id)
        self.values[i, j - 1] = speed
        self.provenance[i, j - 1] = provenance

    def clear(self, segment_id: str, j: int) -> None:
        """Make one cell vacant."""
        i = self.row(segment_id)
        self.values[i, j - 1] = np.nan
        self.provenance[i, j - 1] = Provenance.VACANT

    def is_vacant(self, segment_id: str, j: int) -> bool:
        """True when the cell holds no value."""
        return bool(np.isnan(self.values[self.row(segment_id), j - 1]))

    def vector(self, segment_id: str, first: int, last: int) -> np.ndarray:
        """Copy of X_r(first..last), both ends inclusive and 1-based."""
        return self.values[self.row(segment_id), first - 1 : last].copy()

    def column(self, j: int) -> np.ndarray:
        """View of all segment values at interval j."""
        return self.values[:, j - 1]

    def vacant_segments(self, j: int) -> list[str]:
        """Segments without a value at interval j, ascending ids."""
        mask = np.isnan(self.values[:, j - 1])
        return [sid for sid, vacant in zip(self.segment_ids, mask, strict=True) if vacant]

    def copy(self) -> "SpeedSeries":
        """Deep copy."""
        return SpeedSeries(
            self.segment_ids, self.n_intervals, self.values.copy(), self.provenance.copy()
        )

    def extended(self, n_intervals: int) -> "SpeedSeries":
        """Copy with extra vacant columns appended up to n_intervals."""
        grown = SpeedSeries(self.segment_ids, max(n_intervals, self.n_intervals))
        grown.values[:, : self.n_intervals] = self.values
        grown.provenance[:, : self.n_intervals] = self.provenance
        return grown

    def to_frame(self, intervals: Iterable[int] | None = None) -> pd.DataFrame:
        """
        Long-format table of populated cells.

        Returns:
            DataFrame with columns interval, segment_id, speed_mps, provenance
        """
        columns = list(intervals) if intervals is not None else range(1, self.n_intervals + 1)
        rows = []
        for j in columns:
            for i, sid in enumerate(self.segment_ids):
                v = self.values[i, j - 1]
                if np.isnan(v):
                    continue
                rows.append((j, sid, float(v), Provenance(int(self.provenance[i, j - 1])).label))
        return pd.DataFrame(rows, columns=["interval", "segment_id", "speed_mps", "provenance"])

    @classmethod
    def from_frame(
        cls, frame: pd.DataFrame, segment_ids: Sequence[str], n_intervals: int | None = None
    ) -> "SpeedSeries":
        """Rebuild a series from the long-format table."""
        if n_intervals is None:
            n_intervals = int(frame["interval"].max()) if len(frame) else 0
        series = cls(segment_ids, n_intervals)
        labels = {p.label: p for p in Provenance}
        for row in frame.itertuples(index=False):
            series.set(
                str(row.segment_id), int(row.interval), float(row.speed_mps), labels[row.provenance]
            )
        return series
