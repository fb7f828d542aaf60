"""
Unit tests for relative error, hidden-cell choice and reports.
"""

import math

import numpy as np
import pytest

from shared.evaluation.crossval import hide_cells
from shared.evaluation.metrics import relative_error
from shared.evaluation.report import REPORT_COLUMNS, EvalReport
from shared.exceptions import ZeroTruthNormError
from shared.speed.series import Provenance, SpeedSeries


class TestRelativeError:
    """Tests for relative_error."""

    @pytest.mark.parametrize(
        "estimate,expected",
        [([10.0, 10.0], 0.0), ([0.0, 0.0], 1.0), ([11.0, 9.0], 0.1)],
    )
    def test_examples(self, estimate, expected):
        """Test exact, all-zero and 10 % off estimates."""
        truth = np.array([10.0, 10.0])

        assert relative_error(truth, np.array(estimate)) == pytest.approx(expected)

    def test_zero_truth(self):
        """Test a zero truth vector."""
        with pytest.raises(ZeroTruthNormError):
            relative_error(np.zeros(3), np.ones(3))

    def test_length_mismatch(self):
        """Test vectors of different length."""
        with pytest.raises(ValueError):
            relative_error(np.ones(2), np.ones(3))


@pytest.fixture
def measured():
    """Twenty segments, interval 2 measured on the even ones."""
    ids = [f"s{i:02d}" for i in range(20)]
    series = SpeedSeries(ids, 3)
    for i, sid in enumerate(ids):
        if i % 2 == 0:
            series.set(sid, 2, 10.0 + i, Provenance.MEASURED)
        series.set(sid, 3, 5.0, Provenance.COMPLETED)
    return series


class TestHideCells:
    """Tests for hide_cells."""

    def test_deterministic(self, measured):
        """Test the same seed hides the same cells."""
        assert hide_cells(measured, 2, 0.4, 7) == hide_cells(measured, 2, 0.4, 7)

    def test_count_and_subset(self, measured):
        """Test round(ratio x measured) cells, all of them measured."""
        hidden = hide_cells(measured, 2, 0.4, 7)

        assert len(hidden) == 4
        assert hidden == sorted(hidden)
        assert all(measured.provenance_of(s, 2) is Provenance.MEASURED for s in hidden)

    def test_depends_on_seed_and_interval(self, measured):
        """Test different seeds give different choices somewhere."""
        choices = {tuple(hide_cells(measured, 2, 0.5, seed)) for seed in range(10)}

        assert len(choices) > 1

    def test_only_measured_cells(self, measured):
        """Test completed cells are never hidden."""
        assert hide_cells(measured, 3, 1.0, 0) == []

    def test_extremes(self, measured):
        """Test ratios 0 and 1."""
        assert hide_cells(measured, 2, 0.0, 1) == []
        assert len(hide_cells(measured, 2, 1.0, 1)) == 10

    def test_invalid_ratio(self, measured):
        """Test ratios outside [0, 1]."""
        with pytest.raises(ValueError):
            hide_cells(measured, 2, 1.5, 0)


class TestEvalReport:
    """Tests for EvalReport."""

    @pytest.fixture
    def report(self):
        return EvalReport.from_records(
            [
                (13, "stc", 0.2, 4, 0.1),
                (14, "stc", 0.2, 4, 0.3),
                (13, "knn", 0.2, 4, 0.4),
                (14, "knn", 0.2, 0, float("nan")),
                (13, "knn", 0.5, 9, 0.6),
            ]
        )

    def test_mean_error_filters(self, report):
        """Test method and ratio filters; NaN rows ignored."""
        assert report.mean_error("stc") == pytest.approx(0.2)
        assert report.mean_error("knn", 0.2) == pytest.approx(0.4)
        assert math.isnan(report.mean_error("kriging"))

    def test_summary(self, report):
        """Test per (method, ratio) aggregation."""
        summary = report.summary()

        assert summary["method"].tolist() == ["knn", "knn", "stc"]
        assert summary["intervals"].tolist() == [1, 1, 2]

    def test_concat_and_csv(self, report, tmp_path):
        """Test concatenation and the file layout."""
        both = EvalReport.concat([report, report])
        path = tmp_path / "report.csv"

        both.to_csv(path)

        assert len(both) == 10
        assert path.read_text().splitlines()[0] == ",".join(REPORT_COLUMNS)
        assert len(EvalReport.concat([])) == 0
