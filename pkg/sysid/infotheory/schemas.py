"""
Schemas for k-NN information estimation.
"""

import math
from typing import Dict

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from sysid.config import settings


class SampleCloud(BaseModel):
    """ℓ joint samples whose columns are split into named blocks."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    points: np.ndarray
    block_dims: Dict[str, int] = Field(..., description="Block name -> number of columns, in column order")

    @model_validator(mode="after")
    def _blocks_cover_points(self) -> "SampleCloud":
        if self.points.ndim != 2:
            raise ValueError("points must be ℓ×D")
        if sum(self.block_dims.values()) != self.points.shape[1]:
            raise ValueError("block dimensions must sum to the joint dimension")
        return self

    @property
    def n_samples(self) -> int:
        return self.points.shape[0]

    def block(self, *names: str) -> np.ndarray:
        """Columns of one or more blocks, concatenated in column order."""
        pieces = []
        offset = 0
        for name, width in self.block_dims.items():
            if name in names:
                pieces.append(self.points[:, offset : offset + width])
            offset += width
        if not pieces:
            raise KeyError(f"Unknown blocks {names}")
        return np.hstack(pieces)


class ShuffleTestConfig(BaseModel):
    """Permutation null: n_shuffles estimates, threshold at the alpha percentile."""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(default_factory=lambda: settings.SHUFFLE_ALPHA, gt=0.0, lt=1.0)
    n_shuffles: int = Field(default_factory=lambda: settings.SHUFFLE_COUNT, ge=1)
    seed: int = 0

    @model_validator(mode="after")
    def _rank_in_range(self) -> "ShuffleTestConfig":
        if not 1 <= self.rank <= self.n_shuffles:
            raise ValueError("ceil(alpha * n_shuffles) must lie in [1, n_shuffles]")
        return self

    @property
    def rank(self) -> int:
        """1-based position of the threshold in the sorted null sample."""
        return math.ceil(self.alpha * self.n_shuffles)
