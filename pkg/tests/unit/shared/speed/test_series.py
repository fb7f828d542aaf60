"""
Unit tests for SpeedSeries and speed table files.
"""

import numpy as np
import pytest

from shared.exceptions import DataFormatError, UnknownSegmentError
from shared.speed.io import load_speed_series, read_speed_table, write_speed_table
from shared.speed.series import Provenance, SpeedSeries


@pytest.fixture
def series():
    """Three segments, four intervals, a few cells populated."""
    s = SpeedSeries(["a", "b", "c"], 4)
    s.set("a", 1, 10.0, Provenance.MEASURED)
    s.set("b", 2, 7.5, Provenance.COMPLETED)
    s.set("c", 4, 3.25, Provenance.FALLBACK)
    return s


class TestSpeedSeries:
    """Tests for SpeedSeries."""

    def test_new_series_is_vacant(self):
        """Test every cell starts NaN and VACANT."""
        s = SpeedSeries(["a"], 3)

        assert np.isnan(s.values).all()
        assert s.provenance_of("a", 2) is Provenance.VACANT
        assert s.value("a", 2) is None

    def test_set_and_clear(self, series):
        """Test writing then vacating a cell."""
        assert series.value("b", 2) == 7.5
        assert series.provenance_of("b", 2) is Provenance.COMPLETED

        series.clear("b", 2)

        assert series.is_vacant("b", 2)
        assert series.provenance_of("b", 2) is Provenance.VACANT

    @pytest.mark.parametrize("speed", [-1.0, float("nan"), float("inf")])
    def test_rejects_invalid_speed(self, series, speed):
        """Test negative and non-finite speeds."""
        with pytest.raises(ValueError):
            series.set("a", 2, speed, Provenance.MEASURED)

    def test_unknown_segment(self, series):
        """Test lookup of an id outside the series."""
        with pytest.raises(UnknownSegmentError):
            series.value("z", 1)

    def test_vector_is_inclusive_copy(self, series):
        """Test 1-based inclusive slicing returns a copy."""
        vector = series.vector("a", 1, 2)
        vector[0] = 99.0

        assert vector.shape == (2,)
        assert series.value("a", 1) == 10.0

    def test_vacant_segments(self, series):
        """Test vacancies of one interval in id order."""
        assert series.vacant_segments(1) == ["b", "c"]
        assert series.vacant_segments(4) == ["a", "b"]

    def test_extended(self, series):
        """Test appended columns are vacant and old cells kept."""
        grown = series.extended(6)

        assert grown.n_intervals == 6
        assert grown.value("c", 4) == 3.25
        assert grown.is_vacant("a", 6)
        assert series.n_intervals == 4

    def test_copy_is_independent(self, series):
        """Test copies do not share arrays."""
        clone = series.copy()
        clone.set("a", 1, 1.0, Provenance.COMPLETED)

        assert series.value("a", 1) == 10.0

    def test_shape_mismatch(self):
        """Test arrays of the wrong shape."""
        with pytest.raises(ValueError):
            SpeedSeries(["a"], 2, values=np.zeros((1, 3)))

    def test_frame_lists_populated_cells(self, series):
        """Test long format ordering and labels."""
        frame = series.to_frame()

        assert frame["interval"].tolist() == [1, 2, 4]
        assert frame["segment_id"].tolist() == ["a", "b", "c"]
        assert frame["provenance"].tolist() == ["measured", "completed", "fallback"]
        assert series.to_frame([2])["segment_id"].tolist() == ["b"]


class TestSpeedTableFiles:
    """Tests for speed table I/O."""

    @pytest.mark.parametrize("fmt,name", [("csv", "speeds.csv"), ("json", "speeds.json")])
    def test_write_then_load(self, tmp_path, series, fmt, name):
        """Test both formats restore values and provenance."""
        path = tmp_path / name

        rows = write_speed_table(series, path, fmt)
        loaded = load_speed_series(path, series.segment_ids, series.n_intervals)

        assert rows == 3
        np.testing.assert_allclose(loaded.values, series.values)
        np.testing.assert_array_equal(loaded.provenance, series.provenance)

    def test_interval_filter(self, tmp_path, series):
        """Test writing a single interval."""
        path = tmp_path / "one.csv"

        assert write_speed_table(series, path, intervals=[4]) == 1
        assert read_speed_table(path)["segment_id"].tolist() == ["c"]

    def test_missing_columns(self, tmp_path):
        """Test a table without provenance."""
        path = tmp_path / "bad.csv"
        path.write_text("interval,segment_id,speed_mps\n1,a,3\n")

        with pytest.raises(DataFormatError):
            read_speed_table(path)
