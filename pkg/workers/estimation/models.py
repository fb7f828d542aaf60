"""
Data models for the estimation pipeline.

Requests and summaries are pydantic models so they serialize into config echoes and
logs; the heavy per-run output stays a plain dataclass of numpy-backed objects.
"""

from dataclasses import dataclass, field

from pydantic import BaseModel, Field, model_validator

from shared.correlation.lag import LagTable
from shared.ingest.coverage import CoverageTable
from shared.ingest.intervals import IntervalIndex
from shared.speed.series import SpeedSeries


class EstimationRequest(BaseModel):
    """One estimation run over a span of matched traces."""

    interval_seconds: float = Field(default=80.0, gt=0.0, description="Interval length T (s)")
    w: int = Field(default=12, ge=2, description="Sliding window length in intervals")
    nthr: int = Field(default=2, ge=1, description="Coverage threshold N_thr")
    start_time: float | None = Field(
        default=None, description="Start of interval 1; defaults to the earliest matched point"
    )
    end_time: float | None = Field(
        default=None, description="End of the span; defaults to just after the latest point"
    )

    @model_validator(mode="after")
    def validate_span(self) -> "EstimationRequest":
        if (
            self.start_time is not None
            and self.end_time is not None
            and self.end_time <= self.start_time
        ):
            raise ValueError("end_time must be after start_time")
        return self


class EstimationSummary(BaseModel):
    """Cell counts of a finished run."""

    intervals: int = Field(default=0, description="Intervals in the output table")
    segments: int = Field(default=0, description="Segments in the road net")
    measured: int = Field(default=0, description="Cells measured from traces")
    completed: int = Field(default=0, description="Cells filled by the correlation solver")
    fallback: int = Field(default=0, description="Cells filled by the fallback rule")
    initialized: int = Field(default=0, description="Initialization-span cells")
    lag_entries: int = Field(default=0, description="Lag entries over all windows")
    seconds: float = Field(default=0.0, description="Wall time of the run")


@dataclass
class EstimationOutput:
    """Everything an estimation run produced."""

    index: IntervalIndex
    measured: SpeedSeries
    series: SpeedSeries
    coverage: CoverageTable
    lags: dict[int, LagTable] = field(default_factory=dict)
    summary: EstimationSummary = field(default_factory=EstimationSummary)

    @property
    def n_intervals(self) -> int:
        return self.series.n_intervals
