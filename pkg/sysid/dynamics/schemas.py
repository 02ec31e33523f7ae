"""
Schemas for sampled trajectories, the observation-noise model and
ground-truth coefficient tables.
"""

from typing import List, Optional, Set

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from sysid.basis.schemas import Monomial
from sysid.core.errors import ConfigError


class TimeSeriesSet(BaseModel):
    """ℓ samples of an N-dimensional state on a uniform time grid."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    times: np.ndarray
    states: np.ndarray
    dt: float = Field(..., gt=0.0)

    @model_validator(mode="after")
    def _uniform_grid(self) -> "TimeSeriesSet":
        if self.states.ndim != 2:
            raise ValueError(f"states must be ℓ×N, got shape {self.states.shape}")
        if self.times.shape != (self.states.shape[0],):
            raise ValueError("times must hold one instant per state row")
        if self.times.size > 1:
            steps = np.diff(self.times)
            # Grid points are t0 + i*dt, so rounding grows with |t|.
            slack = 1e-9 * self.dt + 64 * np.finfo(float).eps * float(np.abs(self.times).max())
            if np.any(steps <= 0) or np.any(np.abs(steps - self.dt) > slack):
                raise ValueError("times must be strictly increasing with constant spacing dt")
        return self

    @classmethod
    def from_states(cls, states: np.ndarray, dt: float, t0: float = 0.0) -> "TimeSeriesSet":
        states = np.asarray(states, dtype=np.float64)
        times = t0 + dt * np.arange(states.shape[0], dtype=np.float64)
        return cls(times=times, states=states, dt=dt)

    @property
    def n_samples(self) -> int:
        return self.states.shape[0]

    @property
    def state_dim(self) -> int:
        return self.states.shape[1]

    def take(self, start: int, stop: Optional[int] = None) -> "TimeSeriesSet":
        """Contiguous slice of samples."""
        return TimeSeriesSet(
            times=self.times[start:stop],
            states=self.states[start:stop],
            dt=self.dt,
        )

    def every(self, stride: int) -> "TimeSeriesSet":
        """Keep every ``stride``-th sample; the time step grows accordingly."""
        if stride < 1:
            raise ValueError("stride must be >= 1")
        if stride == 1:
            return self
        return TimeSeriesSet(
            times=self.times[::stride],
            states=self.states[::stride],
            dt=self.dt * stride,
        )


class NoiseModel(BaseModel):
    """
    Mixture observation noise.

    Each corrupted value gets N(0, eps1^2) with probability 1 - p and
    N(0, eps1^2 + eps2^2) with probability p.
    """

    model_config = ConfigDict(frozen=True)

    eps1: float = Field(default=0.0, ge=0.0, description="Persistent Gaussian std")
    eps2: float = Field(default=0.0, ge=0.0, description="Extra std of outlier draws")
    p: float = Field(default=0.0, ge=0.0, le=1.0, description="Outlier probability")
    seed: int = 0
    per_row: bool = Field(
        default=False,
        description="Draw the outlier indicator once per time row instead of per entry",
    )

    @property
    def is_silent(self) -> bool:
        return self.eps1 == 0.0 and self.eps2 == 0.0


class GroundTruth(BaseModel):
    """True coefficients of a benchmark system in a declared polynomial basis."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    coefficients: np.ndarray = Field(..., description="K×N matrix, one column per state dimension")
    columns: List[Monomial]
    max_degree: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _shape(self) -> "GroundTruth":
        if self.coefficients.ndim != 2 or self.coefficients.shape[0] != len(self.columns):
            raise ValueError("coefficients must be K×N with K matching the monomial list")
        return self

    @property
    def state_dim(self) -> int:
        return self.coefficients.shape[1]

    @property
    def support(self) -> List[Set[int]]:
        """Per-dimension index sets of the nonzero coefficients."""
        return [
            set(np.flatnonzero(self.coefficients[:, i]).tolist())
            for i in range(self.state_dim)
        ]

    @property
    def n_nonzero(self) -> int:
        return int(np.count_nonzero(self.coefficients))

    def embed(self, columns: List[Monomial], max_degree: int) -> "GroundTruth":
        """Re-index the same coefficients into another monomial list."""
        positions = {m.exponents: k for k, m in enumerate(columns)}
        coefficients = np.zeros((len(columns), self.state_dim))
        for k, monomial in enumerate(self.columns):
            row = self.coefficients[k]
            if not np.any(row):
                continue
            if monomial.exponents not in positions:
                raise ConfigError(f"Target basis has no column for {monomial.label()}")
            coefficients[positions[monomial.exponents]] = row
        return GroundTruth(coefficients=coefficients, columns=list(columns), max_degree=max_degree)
