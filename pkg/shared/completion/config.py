"""
Configuration settings for vacancy completion.

Defaults follow the tuned estimation setup: d_A = 2000, N_min = 4.
"""

from functools import lru_cache

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class CompletionSettings(BaseSettings):
    """Settings for single-vacancy solving and recursive filling."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="COMPLETION_",
        case_sensitive=False,
        extra="ignore",
    )

    # Contributor area
    d_a: float = Field(
        default=2000.0,
        gt=0.0,
        le=100_000.0,
        description="Bound on network distance x intersection distance for contributors",
    )
    n_min: int = Field(
        default=4,
        ge=1,
        le=100,
        description="Contributors with available speeds needed for a segment to be calculable",
    )

    # Solver
    v_max: float = Field(
        default=40.0,
        gt=0.0,
        le=100.0,
        description="Upper speed bound (m/s) of the search interval",
    )
    tolerance: float = Field(
        default=1e-3,
        gt=0.0,
        le=1.0,
        description="Solver tolerance (m/s); the coarse grid step is 64x this",
    )

    # Fallback
    default_speed: float = Field(
        default=16.7,
        gt=0.0,
        le=100.0,
        description="Speed (m/s) for segments that were never measured",
    )

    # Parallelism
    region_count: int = Field(
        default=1,
        ge=1,
        le=1024,
        description="Number of spatial regions completed independently",
    )

    @model_validator(mode="after")
    def check_default_speed(self) -> "CompletionSettings":
        if self.default_speed > self.v_max:
            raise ValueError("default_speed must not exceed v_max")
        return self


@lru_cache
def get_completion_settings() -> CompletionSettings:
    """
    Get cached completion settings instance.

    Returns:
        CompletionSettings: Cached settings instance
    """
    return CompletionSettings()
