"""
Toolkit configuration.

Centralized environment-based settings using Pydantic v2.
"""

from typing import Optional

from pydantic import ConfigDict, Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # --------------------
    # Environment
    # --------------------
    ENV: str = "dev"
    LOG_LEVEL: str = "INFO"

    # --------------------
    # Estimators
    # --------------------
    KNN_K: int = Field(default=2, ge=1, description="Neighbours used by the KSG estimators")
    KDTREE_MAX_DIM: int = Field(
        default=20,
        description="Joint dimension above which neighbour search falls back to brute force",
    )
    TIE_JITTER: float = Field(
        default=1e-12,
        ge=0.0,
        description="Relative magnitude of the deterministic tie-breaking jitter",
    )

    # --------------------
    # Shuffle test
    # --------------------
    SHUFFLE_ALPHA: float = Field(default=0.95, gt=0.0, lt=1.0)
    SHUFFLE_COUNT: int = Field(default=100, ge=1)

    # --------------------
    # Simulation
    # --------------------
    LORENZ_BURN_IN: int = Field(default=10_000, ge=0)
    KSE_BURN_IN: int = Field(default=10_000, ge=0)
    STATE_BOUND: float = Field(
        default=1e6,
        gt=0.0,
        description="Integrators and maps abort once any state leaves this bound",
    )

    # --------------------
    # Benchmark harness
    # --------------------
    DEFAULT_RUNS: int = Field(default=20, ge=1)
    MAX_WORKERS: int = Field(default=1, ge=1)

    # --------------------
    # MLflow
    # --------------------
    MLFLOW_TRACKING_URI: Optional[str] = None
    MLFLOW_EXPERIMENT: str = "sysid-bench"

    # --------------------
    # Prometheus
    # --------------------
    METRICS_ENABLED: bool = False

    model_config = ConfigDict(
        env_file=".env",
        env_prefix="SYSID_",
        extra="ignore",
    )


settings = Settings()
