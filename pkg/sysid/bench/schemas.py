"""
Schemas for benchmark experiments and their reports.

Experiment files are JSON documents matching ExperimentConfig, e.g.::

    {
      "system": "lorenz",
      "system_params": {"sigma": 10, "rho": 28, "beta": 2.6667, "dt": 0.0005},
      "basis_degree": 5,
      "n_samples": 1500,
      "noise": {"eps1": 1e-5, "eps2": 0.2, "p": 0.2},
      "solvers": [{"name": "er"}, {"name": "sindy", "params": {"lambda": 0.02}}],
      "n_runs": 20,
      "seed": 7
    }
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from sysid.config import settings
from sysid.dynamics.schemas import NoiseModel
from sysid.solvers.schemas import SolverId

SystemName = Literal["lorenz", "kse", "double_well", "logistic_net", "custom_csv"]


class SolverSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: SolverId
    params: Dict[str, Any] = Field(default_factory=dict)


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    system: SystemName
    system_params: Dict[str, Any] = Field(default_factory=dict)
    basis_degree: int = Field(..., ge=0)
    n_samples: int = Field(..., ge=2, description="Rows left after derivative alignment")
    noise: NoiseModel = Field(default_factory=NoiseModel)
    solvers: List[SolverSpec] = Field(..., min_length=1)
    n_runs: int = Field(default_factory=lambda: settings.DEFAULT_RUNS, ge=1)
    seed: int = 0
    derivative_scheme: Literal["central", "forward"] = "central"
    csv_path: Optional[str] = None
    include_traces: bool = False

    @model_validator(mode="after")
    def _csv_source(self) -> "ExperimentConfig":
        if self.system == "custom_csv" and not self.csv_path:
            raise ValueError("custom_csv experiments need csv_path")
        return self


class RunRecord(BaseModel):
    """One solver on one simulated dataset."""

    solver: SolverId
    run_index: int
    run_seed: int
    n_rows: int = Field(..., description="Regression rows after derivative alignment")
    n_raw_samples: int = Field(..., description="Samples drawn from the generator")
    parameter_error: Optional[float] = None
    exact_recovery: Optional[bool] = None
    support_found: List[List[int]] = Field(default_factory=list)
    flags: List[str] = Field(default_factory=list)
    wall_time: float = 0.0
    error: Optional[str] = None
    traces: Optional[List[Dict[str, Any]]] = None


class SolverAggregate(BaseModel):
    solver: SolverId
    n_runs: int
    n_failed: int
    median_error: Optional[float] = None
    q1_error: Optional[float] = None
    q3_error: Optional[float] = None
    exact_recovery_probability: Optional[float] = None


class ExperimentReport(BaseModel):
    config: ExperimentConfig
    runs: List[RunRecord]
    aggregates: List[SolverAggregate]
    metadata: Dict[str, Any] = Field(
        default_factory=dict,
        description="Timestamps and package version; excluded from reproducibility comparisons",
    )
