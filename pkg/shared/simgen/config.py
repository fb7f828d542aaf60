"""
Configuration settings for synthetic scenarios.
"""

from functools import lru_cache

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class SimulationSettings(BaseSettings):
    """Grid geometry, speed field and fleet settings of a synthetic city."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="SIMGEN_",
        case_sensitive=False,
        extra="ignore",
    )

    # Grid
    rows: int = Field(default=10, ge=2, le=200, description="Intersection rows")
    cols: int = Field(default=10, ge=2, le=200, description="Intersection columns")
    edge_length: float = Field(
        default=200.0, gt=0.0, le=5000.0, description="Block edge length (m)"
    )
    lane_offset: float = Field(
        default=5.0, ge=0.0, le=50.0, description="Lateral offset of each direction (m)"
    )
    setback: float = Field(
        default=10.0, ge=0.0, le=100.0, description="Gap kept clear around intersections (m)"
    )

    # Speed field
    base_speed: float = Field(default=12.0, gt=0.0, le=60.0, description="Mean speed (m/s)")
    base_spread: float = Field(
        default=0.2, ge=0.0, lt=1.0, description="Relative spread of per-segment base speeds"
    )
    daily_amplitude: float = Field(
        default=3.0, ge=0.0, le=30.0, description="Amplitude of the daily cycle (m/s)"
    )
    wave_count: int = Field(
        default=24, ge=0, le=10_000, description="Congestion waves over the scenario"
    )
    wave_depth: float = Field(
        default=0.5, ge=0.0, lt=1.0, description="Relative speed drop at a wave's origin"
    )
    wave_duration: float = Field(
        default=900.0, gt=0.0, le=86_400.0, description="Duration of one wave pulse (s)"
    )
    wave_reach: float = Field(
        default=2000.0, gt=0.0, le=100_000.0, description="Downstream reach of a wave (m)"
    )
    wave_speed: float = Field(
        default=5.0, gt=0.0, le=60.0, description="Propagation speed of congestion waves (m/s)"
    )
    noise_amplitude: float = Field(
        default=0.5, ge=0.0, le=20.0, description="Amplitude of smooth per-segment noise (m/s)"
    )
    v_max: float = Field(default=40.0, gt=1.0, le=100.0, description="Speed cap (m/s)")

    # Fleet
    vehicles: int = Field(default=500, ge=1, le=1_000_000, description="Fleet size")
    hours: float = Field(default=4.0, gt=0.0, le=240.0, description="Scenario duration (h)")
    report_period: float = Field(
        default=10.0, gt=0.0, le=3600.0, description="Seconds between reports of a vehicle"
    )
    gps_noise_sigma: float = Field(
        default=8.0, ge=0.0, le=200.0, description="Position noise standard deviation (m)"
    )
    speed_noise_sigma: float = Field(
        default=0.0, ge=0.0, le=20.0, description="Instant speed noise standard deviation (m/s)"
    )
    start_time: float = Field(default=0.0, description="Epoch seconds of the scenario start")
    seed: int = Field(default=42, description="Random seed")

    @model_validator(mode="after")
    def check_setback(self) -> "SimulationSettings":
        if 2 * self.setback >= self.edge_length:
            raise ValueError("setback must be less than half the edge length")
        return self


@lru_cache
def get_simulation_settings() -> SimulationSettings:
    """
    Get cached simulation settings instance.

    Returns:
        SimulationSettings: Cached settings instance
    """
    return SimulationSettings()
