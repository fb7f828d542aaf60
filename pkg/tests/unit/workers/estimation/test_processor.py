"""
Unit tests for the estimation processor.

Tests interval resolution, pipeline orchestration, prediction and lag dumps.
"""

import numpy as np
import pytest
from pydantic import ValidationError as PydanticValidationError

from shared.completion.config import CompletionSettings
from shared.correlation.config import CorrelationSettings
from shared.exceptions import DataFormatError, ValidationError
from shared.speed.series import Provenance
from tests.builders import chain_net, drive
from workers.estimation.models import EstimationRequest, EstimationSummary
from workers.estimation.processor import EstimationProcessor

PATH = ["s0", "s1", "s2", "s3"]


@pytest.fixture
def net():
    """Four 200 m segments end to end."""
    return chain_net([200.0] * 4)


@pytest.fixture
def traces(net):
    """Twelve vehicles crossing the chain, one every 20 s, at 8 to 13 m/s."""
    return {
        f"v{i:02d}": drive(net, f"v{i:02d}", PATH, 8.0 + i % 6, 1000.0 + 20.0 * i, 5.0)
        for i in range(12)
    }


@pytest.fixture
def processor(net):
    """Processor with small completion thresholds."""
    return EstimationProcessor(
        net,
        completion_settings=CompletionSettings(n_min=1),
        correlation_settings=CorrelationSettings(free_flow_speed=10.0),
    )


@pytest.fixture
def request_():
    """T = 20 s, w = 3, N_thr = 1."""
    return EstimationRequest(interval_seconds=20.0, w=3, nthr=1)


class TestEstimationRequest:
    """Tests for request validation."""

    def test_defaults(self):
        """Test default interval and window."""
        request = EstimationRequest()

        assert request.interval_seconds == 80.0
        assert request.w == 12
        assert request.nthr == 2

    def test_span_must_be_ordered(self):
        """Test end before start."""
        with pytest.raises(PydanticValidationError):
            EstimationRequest(start_time=100.0, end_time=50.0)

    @pytest.mark.parametrize("field,value", [("interval_seconds", 0.0), ("w", 1), ("nthr", 0)])
    def test_bounds(self, field, value):
        """Test out-of-range parameters."""
        with pytest.raises(PydanticValidationError):
            EstimationRequest(**{field: value})


class TestIntervalIndex:
    """Tests for interval resolution."""

    def test_span_from_traces(self, processor, traces, request_):
        """Test start at the floor of the first point, end at the last."""
        index, n_intervals = processor.interval_index(traces, request_)
        last = max(p.timestamp for t in traces.values() for p in t)

        assert index.start_time == 1000.0
        assert n_intervals == index.interval_of(last)

    def test_explicit_span(self, processor, traces):
        """Test start and end given by the request."""
        request = EstimationRequest(interval_seconds=20.0, w=3, start_time=900.0, end_time=1010.0)

        index, n_intervals = processor.interval_index(traces, request)

        assert index.start_time == 900.0
        assert n_intervals == 6

    def test_no_points(self, processor, request_):
        """Test an empty trace set without an explicit span."""
        with pytest.raises(DataFormatError):
            processor.interval_index({}, request_)


class TestProcess:
    """Tests for the full pipeline."""

    def test_every_cell_filled(self, processor, traces, request_, net):
        """Test the output has a value and provenance for every cell."""
        output = processor.process(traces, request_)

        assert not np.isnan(output.series.values).any()
        assert (output.series.provenance != Provenance.VACANT).all()
        assert output.n_intervals == output.measured.n_intervals
        assert output.series.segment_ids == net.segment_ids

    def test_measured_cells_preserved(self, processor, traces, request_):
        """Test measured cells are copied through unchanged."""
        output = processor.process(traces, request_)
        measured = ~np.isnan(output.measured.values)

        np.testing.assert_array_equal(
            output.series.values[measured], output.measured.values[measured]
        )
        assert (output.series.provenance[measured] == Provenance.MEASURED).all()

    def test_initialization_span(self, processor, traces, request_):
        """Test intervals 1..w hold only measured or initialized cells."""
        output = processor.process(traces, request_)
        head = output.series.provenance[:, : request_.w]

        assert set(np.unique(head)) <= {Provenance.MEASURED, Provenance.INITIALIZED}

    def test_lag_tables_per_window(self, processor, traces, request_):
        """Test one lag table for every interval after the initialization span."""
        output = processor.process(traces, request_)

        assert sorted(output.lags) == list(range(request_.w + 1, output.n_intervals + 1))
        assert output.lags[request_.w + 1].lag("s0", "s1") is not None

    def test_summary_accounts_for_every_cell(self, processor, traces, request_, net):
        """Test the summary counts add up to the table size."""
        summary = processor.process(traces, request_).summary

        assert isinstance(summary, EstimationSummary)
        total = summary.measured + summary.completed + summary.fallback + summary.initialized
        assert total == summary.intervals * len(net)
        assert summary.segments == len(net)
        assert summary.lag_entries > 0

    def test_short_span(self, processor, traces):
        """Test a run no longer than the initialization span."""
        request = EstimationRequest(interval_seconds=400.0, w=5, nthr=1)

        output = processor.process(traces, request)

        assert output.lags == {}
        assert not np.isnan(output.series.values).any()

    def test_engine_cached_per_window(self, processor):
        """Test engines are reused for the same w."""
        assert processor.engine(3) is processor.engine(3)
        assert processor.engine(3) is not processor.engine(4)


class TestPredict:
    """Tests for one-step prediction."""

    def test_next_interval_only(self, processor, traces, request_):
        """Test predictions fill interval n+1 and nothing else."""
        output = processor.process(traces, request_)
        n = output.n_intervals

        predicted = processor.predict(output, request_.w)

        assert predicted.n_intervals == n + 1
        assert (predicted.provenance[:, n] == Provenance.PREDICTED).all()
        assert np.isnan(predicted.values[:, :n]).all()
        assert (predicted.values[:, n] >= 0.0).all()

    def test_interval_without_lags(self, processor, traces, request_):
        """Test n inside the initialization span."""
        output = processor.process(traces, request_)

        with pytest.raises(ValidationError):
            processor.predict(output, request_.w, n=request_.w)


class TestLagTable:
    """Tests for single-window lag dumps."""

    def test_window(self, processor, traces, request_):
        """Test tracked lags of the chain."""
        table = processor.lag_table(traces, request_, 8)

        assert table.window_end == 8
        assert table.get("s0", "s1").source == "tracked"

    def test_window_before_history(self, processor, traces, request_):
        """Test a window ending before interval w."""
        with pytest.raises(ValidationError):
            processor.lag_table(traces, request_, 2)
