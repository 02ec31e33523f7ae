"""
Schemas shared by every inverse-problem solver.
"""

from enum import Enum
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class SolverId(str, Enum):
    LS = "ls"
    OLS = "ols"
    LASSO = "lasso"
    CS = "cs"
    SINDY = "sindy"
    TW = "tw"
    ER = "er"


class SparseSolution(BaseModel):
    """Coefficient vector with its declared support and provenance."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    coefficients: np.ndarray
    support: Tuple[int, ...]
    solver_id: SolverId
    hyperparams: Dict[str, Any] = Field(default_factory=dict)
    residual_norm: float = Field(..., ge=0.0)
    flags: List[str] = Field(
        default_factory=list,
        description="Non-fatal conditions such as not_converged or infeasible",
    )

    @model_validator(mode="after")
    def _zero_off_support(self) -> "SparseSolution":
        off = np.ones(self.coefficients.size, dtype=bool)
        off[list(self.support)] = False
        if np.any(self.coefficients[off] != 0.0):
            raise ValueError("coefficients must vanish outside the support")
        return self

    @property
    def n_terms(self) -> int:
        return len(self.support)

    @property
    def flagged(self) -> bool:
        return bool(self.flags)


def make_solution(
    phi: np.ndarray,
    f: np.ndarray,
    coefficients: np.ndarray,
    solver_id: SolverId,
    *,
    support: Optional[Sequence[int]] = None,
    hyperparams: Optional[Dict[str, Any]] = None,
    flags: Optional[List[str]] = None,
) -> SparseSolution:
    """
    Assemble a SparseSolution and recompute its residual from the data.

    Without an explicit support, every nonzero coefficient is in it; with
    one, coefficients outside it are zeroed.
    """
    coefficients = np.array(coefficients, dtype=np.float64)
    if support is None:
        support = np.flatnonzero(coefficients)
    else:
        support = np.asarray(sorted(set(int(i) for i in support)), dtype=np.int64)
        mask = np.zeros(coefficients.size, dtype=bool)
        mask[support] = True
        coefficients[~mask] = 0.0

    return SparseSolution(
        coefficients=coefficients,
        support=tuple(int(i) for i in support),
        solver_id=solver_id,
        hyperparams=hyperparams or {},
        residual_norm=float(np.linalg.norm(phi @ coefficients - f)),
        flags=flags or [],
    )


class CrossValidationPlan(BaseModel):
    """K-fold selection of one hyperparameter from a grid."""

    model_config = ConfigDict(frozen=True)

    n_folds: int = Field(default=5, ge=2)
    grid: List[float] = Field(..., min_length=1)
    selection_rule: Literal["min_residual"] = "min_residual"

    @field_validator("grid")
    @classmethod
    def _finite(cls, value: List[float]) -> List[float]:
        if not all(np.isfinite(v) for v in value):
            raise ValueError("grid values must be finite")
        return value
