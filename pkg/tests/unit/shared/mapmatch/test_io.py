"""
Unit tests for matched-record files.
"""

import pytest

from shared.exceptions import DataFormatError
from shared.mapmatch.io import MATCHED_COLUMNS, read_matched, traces_to_frame, write_matched
from shared.mapmatch.models import MatchedPoint


class TestMatchedFiles:
    """Tests for reading and writing matched traces."""

    def test_file_round_trip(self, tmp_path):
        """Test traces survive write then read, grouped and time ordered."""
        traces = {
            "v2": [MatchedPoint("v2", 5.0, "s0001", 12.5, 7.25)],
            "v1": [
                MatchedPoint("v1", 1.0, "s0000", 0.0, 3.0),
                MatchedPoint("v1", 2.5, "s0002", 40.125, 4.5),
            ],
        }
        path = tmp_path / "matched.csv"

        write_matched(traces, path)
        loaded = read_matched(path)

        assert list(loaded) == ["v1", "v2"]
        assert loaded["v1"] == traces["v1"]
        assert loaded["v2"] == traces["v2"]

    def test_frame_columns(self):
        """Test frame layout."""
        frame = traces_to_frame({"v": [MatchedPoint("v", 1.0, "s1", 2.0, 3.0)]})

        assert list(frame.columns) == MATCHED_COLUMNS
        assert len(frame) == 1

    def test_missing_columns(self, tmp_path):
        """Test a file without the offset column."""
        path = tmp_path / "bad.csv"
        path.write_text("vehicle_id,timestamp,segment_id,speed\nv,1,s1,2\n")

        with pytest.raises(DataFormatError, match="offset_m"):
            read_matched(path)
