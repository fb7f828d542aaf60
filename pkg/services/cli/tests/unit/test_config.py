"""
Unit tests for RunConfig resolution.
"""

import pytest
from pydantic import ValidationError

from services.cli.app.core.config import RunConfig, build_run_config
from services.cli.app.main import build_parser


def parse(*argv):
    args = build_parser().parse_args(list(argv))
    args.jobs = args.jobs or 1
    return args


class TestBuildRunConfig:
    """Tests for build_run_config."""

    def test_estimation_defaults(self):
        """Test T and w come from ingest and correlation settings."""
        args = parse("estimate", "--net", "n.json", "--matched", "m.csv", "--out", "s.csv")

        config = build_run_config(args)

        assert config.interval_seconds == 80.0
        assert config.w == 12
        assert config.format == "csv"

    def test_prediction_defaults(self):
        """Test prediction runs default to T = 90 and w = 13."""
        args = parse("predict", "--net", "n.json", "--matched", "m.csv", "--out", "p.csv")

        config = build_run_config(args)

        assert config.interval_seconds == 90.0
        assert config.w == 13

    def test_flags_override(self):
        """Test explicit flags land in their settings sections."""
        args = parse(
            "estimate",
            "--net", "n.json",
            "--matched", "m.csv",
            "--out", "s.csv",
            "--T", "40",
            "--w", "6",
            "--nthr", "3",
            "--da", "250",
            "--nmin", "2",
            "--vmax", "30",
            "--free-flow", "11",
        )  # fmt: skip

        config = build_run_config(args)

        assert config.interval_seconds == 40.0
        assert config.w == 6
        assert config.ingest.nthr == 3
        assert config.completion.d_a == 250.0
        assert config.completion.n_min == 2
        assert config.completion.v_max == 30.0
        assert config.correlation.free_flow_speed == 11.0

    def test_simulation_flags(self):
        """Test simgen flags map onto SimulationSettings."""
        args = parse("simgen", "--rows", "3", "--cols", "4", "--gps-noise", "0", "--out", "r.csv")

        config = build_run_config(args)

        assert config.simulation.rows == 3
        assert config.simulation.cols == 4
        assert config.simulation.gps_noise_sigma == 0.0

    def test_out_of_range_flag(self):
        """Test a flag outside its settings bounds."""
        args = parse("estimate", "--net", "n", "--matched", "m", "--out", "s", "--nthr", "0")

        with pytest.raises(ValidationError):
            build_run_config(args)


class TestEcho:
    """Tests for the config echo."""

    def test_echo_round_trip(self, tmp_path):
        """Test an echo reads back to the same config."""
        args = parse("estimate", "--net", "n.json", "--matched", "m.csv", "--out", "s.csv")
        config = build_run_config(
            args, inputs={"net": "n.json"}, outputs={"speeds": "s.csv"}, options={"end_time": None}
        )

        path = config.echo(tmp_path / "speeds.csv")

        assert path.name == "speeds.csv.config.json"
        assert RunConfig.load(path) == config
