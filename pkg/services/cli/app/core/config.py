"""
Configuration for CLI runs.

Every command resolves one RunConfig from the per-concern settings (environment
first, then explicit flags) and echoes it next to its main output file, so an output
can be regenerated from its echo alone.
"""

from argparse import Namespace
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, Field

from shared.baselines.config import BaselineSettings
from shared.completion.config import CompletionSettings
from shared.correlation.config import CorrelationSettings
from shared.ingest.config import IngestSettings
from shared.mapmatch.config import MapMatchSettings
from shared.prediction.config import PredictionSettings
from shared.simgen.config import SimulationSettings

# flag dest -> settings field, per settings section
FLAG_FIELDS: dict[str, dict[str, str]] = {
    "ingest": {
        "nthr": "nthr",
        "start_time": "start_time",
        "speed_unit": "speed_unit",
        "origin_lon": "origin_lon",
        "origin_lat": "origin_lat",
    },
    "mapmatch": {
        "dmin": "d_min",
        "cell_size": "cell_size",
        "max_depth": "max_depth",
    },
    "correlation": {
        "free_flow": "free_flow_speed",
        "lookback": "lookback_seconds",
    },
    "completion": {
        "da": "d_a",
        "nmin": "n_min",
        "vmax": "v_max",
        "default_speed": "default_speed",
        "tolerance": "tolerance",
        "regions": "region_count",
    },
    "prediction": {
        "vmax": "v_max",
    },
    "baseline": {
        "knn_k": "knn_k",
        "arima_order": "arima_order",
    },
    "simulation": {
        "rows": "rows",
        "cols": "cols",
        "edge_length": "edge_length",
        "vehicles": "vehicles",
        "hours": "hours",
        "report_period": "report_period",
        "gps_noise": "gps_noise_sigma",
        "wave_speed": "wave_speed",
        "seed": "seed",
    },
}

PREDICTION_COMMANDS = {"predict"}


class RunConfig(BaseModel):
    """All tunables, inputs and outputs of one CLI invocation."""

    command: str = Field(..., description="Subcommand name")
    interval_seconds: float = Field(..., gt=0.0, description="Calculation interval T (s)")
    w: int = Field(..., ge=2, description="Sliding window length in intervals")
    jobs: int = Field(default=1, ge=1, description="Worker threads")
    seed: int | None = Field(default=None, description="Seed of randomized steps")
    format: Literal["csv", "json"] = Field(default="csv", description="Speed table format")

    ingest: IngestSettings = Field(default_factory=IngestSettings)
    mapmatch: MapMatchSettings = Field(default_factory=MapMatchSettings)
    correlation: CorrelationSettings = Field(default_factory=CorrelationSettings)
    completion: CompletionSettings = Field(default_factory=CompletionSettings)
    prediction: PredictionSettings = Field(default_factory=PredictionSettings)
    baseline: BaselineSettings = Field(default_factory=BaselineSettings)
    simulation: SimulationSettings = Field(default_factory=SimulationSettings)

    inputs: dict[str, str] = Field(default_factory=dict, description="Input paths by role")
    outputs: dict[str, str] = Field(default_factory=dict, description="Output paths by role")
    options: dict[str, Any] = Field(default_factory=dict, description="Command-specific options")

    def echo(self, output: str | Path) -> Path:
        """
        Write this config as ``<output>.config.json``.

        Returns:
            Path of the echo file
        """
        path = Path(f"{output}.config.json")
        path.write_text(self.model_dump_json(indent=2))
        return path

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        """Read an echo file back."""
        return cls.model_validate_json(Path(path).read_text())


def _section(args: Namespace, name: str) -> dict[str, Any]:
    values = {}
    for dest, field_name in FLAG_FIELDS[name].items():
        value = getattr(args, dest, None)
        if value is not None:
            values[field_name] = value
    return values


def _uses_prediction_defaults(args: Namespace) -> bool:
    return args.command in PREDICTION_COMMANDS or getattr(args, "mode", None) == "prediction"


def build_run_config(
    args: Namespace,
    inputs: dict[str, str] | None = None,
    outputs: dict[str, str] | None = None,
    options: dict[str, Any] | None = None,
) -> RunConfig:
    """
    Resolve a RunConfig from parsed flags.

    Settings read the environment first; flags that were given override it. T and w
    default to the prediction settings for prediction runs and to the ingest and
    correlation settings otherwise.

    Raises:
        pydantic.ValidationError: If a flag is out of range
    """
    ingest = IngestSettings(**_section(args, "ingest"))
    correlation = CorrelationSettings(**_section(args, "correlation"))
    prediction = PredictionSettings(**_section(args, "prediction"))

    if _uses_prediction_defaults(args):
        interval_seconds, w = prediction.interval_seconds, prediction.window
    else:
        interval_seconds, w = ingest.interval_seconds, correlation.window
    T = getattr(args, "T", None)
    if isinstance(T, int | float):
        interval_seconds = float(T)
    if isinstance(getattr(args, "w", None), int):
        w = args.w

    return RunConfig(
        command=args.command,
        interval_seconds=interval_seconds,
        w=w,
        jobs=args.jobs,
        seed=getattr(args, "seed", None),
        format=getattr(args, "format", "csv"),
        ingest=ingest,
        mapmatch=MapMatchSettings(**_section(args, "mapmatch")),
        correlation=correlation,
        completion=CompletionSettings(**_section(args, "completion")),
        prediction=prediction,
        baseline=BaselineSettings(**_section(args, "baseline")),
        simulation=SimulationSettings(**_section(args, "simulation")),
        inputs=inputs or {},
        outputs=outputs or {},
        options=options or {},
    )
