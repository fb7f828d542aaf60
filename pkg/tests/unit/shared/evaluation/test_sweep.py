"""
Unit tests for sweep helpers.
"""

import pytest

from shared.evaluation.sweep import HOUR_SECONDS, choose_hours, parse_range


class TestParseRange:
    """Tests for parse_range."""

    def test_inclusive_stop(self):
        """Test start:stop:step includes the stop."""
        assert parse_range("5:20:5") == [5.0, 10.0, 15.0, 20.0]
        assert parse_range("60:120:30") == [60.0, 90.0, 120.0]

    def test_single_value(self):
        """Test a lone number."""
        assert parse_range("80") == [80.0]

    def test_fractional_step(self):
        """Test float accumulation keeps the stop."""
        assert len(parse_range("0:1:0.1")) == 11

    @pytest.mark.parametrize("text", ["1:2", "5:1:1", "1:5:0", "a:b:c"])
    def test_invalid(self, text):
        """Test malformed ranges."""
        with pytest.raises(ValueError):
            parse_range(text)


class TestChooseHours:
    """Tests for choose_hours."""

    def test_distinct_whole_hours(self):
        """Test seeded hours are distinct, aligned and ordered."""
        hours = choose_hours(0.0, 10 * HOUR_SECONDS, 3, seed=4)

        assert len(hours) == 3
        assert hours == sorted(hours)
        assert len({begin for begin, _ in hours}) == 3
        for begin, end in hours:
            assert end - begin == HOUR_SECONDS
            assert begin % HOUR_SECONDS == 0

    def test_deterministic(self):
        """Test the same seed picks the same hours."""
        assert choose_hours(0.0, 36_000.0, 4, 1) == choose_hours(0.0, 36_000.0, 4, 1)

    def test_count_capped(self):
        """Test asking for more hours than the span holds."""
        assert len(choose_hours(0.0, 2.5 * HOUR_SECONDS, 10, 0)) == 2

    def test_short_span(self):
        """Test spans under an hour are used whole."""
        assert choose_hours(100.0, 1900.0, 3, 0) == [(100.0, 1900.0)]
