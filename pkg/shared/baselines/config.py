"""
Configuration settings for the comparison estimators.
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class BaselineSettings(BaseSettings):
    """Settings for KNN, Kriging, ARIMA and Kalman filter baselines."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="BASELINE_",
        case_sensitive=False,
        extra="ignore",
    )

    # KNN
    knn_k: int = Field(default=4, ge=1, le=100, description="Neighbors used by KNN")

    # Kriging
    kriging_lags: int = Field(
        default=12, ge=3, le=100, description="Distance bins of the empirical variogram"
    )
    kriging_closest: int = Field(
        default=16, ge=2, le=500, description="Nearest samples entering the Kriging system"
    )

    # ARIMA
    arima_order: int = Field(
        default=1, ge=1, le=10, description="Autoregressive order p of ARIMA(p, 1, 0)"
    )

    # Kalman filter
    kf_process_variance: float = Field(
        default=0.5, ge=0.0, description="Random-walk process variance q ((m/s)^2)"
    )
    kf_observation_variance: float = Field(
        default=1.0, ge=0.0, description="Observation variance ((m/s)^2)"
    )


@lru_cache
def get_baseline_settings() -> BaselineSettings:
    """
    Get cached baseline settings instance.

    Returns:
        BaselineSettings: Cached settings instance
    """
    return BaselineSettings()
