"""
Schemas for polynomial candidate functions and the evaluated basis matrix.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator


def monomial_column(states: np.ndarray, exponents: Sequence[int]) -> np.ndarray:
    """
    Evaluate prod_i z_i ** e_i over every row of ``states``.

    The multiplication order is fixed (ascending variable index), which
    makes every evaluation path in the package bit-identical.
    """
    column = np.ones(states.shape[0], dtype=np.float64)
    for i, power in enumerate(exponents):
        if power:
            column = column * np.power(states[:, i], power)
    return column


class Monomial(BaseModel):
    """A product of state variables raised to nonnegative integer powers."""

    model_config = ConfigDict(frozen=True)

    exponents: Tuple[int, ...] = Field(..., description="Power of each state variable")

    @field_validator("exponents")
    @classmethod
    def _nonnegative(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(value) == 0:
            raise ValueError("Monomial needs at least one state variable")
        if any(e < 0 for e in value):
            raise ValueError(f"Exponents must be nonnegative, got {value}")
        return value

    @computed_field
    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def state_dim(self) -> int:
        return len(self.exponents)

    def evaluate(self, states: np.ndarray) -> np.ndarray:
        """Evaluate on an ℓ×N array (or a single N-vector)."""
        states = np.atleast_2d(np.asarray(states, dtype=np.float64))
        if states.shape[1] != self.state_dim:
            raise ValueError(
                f"Monomial over {self.state_dim} variables evaluated on "
                f"{states.shape[1]}-dimensional states"
            )
        return monomial_column(states, self.exponents)

    def label(self, names: Optional[Sequence[str]] = None) -> str:
        """Human readable form, e.g. ``z1^2 z3`` (``1`` for the constant)."""
        names = names or [f"z{i + 1}" for i in range(self.state_dim)]
        parts = []
        for name, power in zip(names, self.exponents):
            if power == 1:
                parts.append(name)
            elif power > 1:
                parts.append(f"{name}^{power}")
        return " ".join(parts) if parts else "1"


class BasisMatrix(BaseModel):
    """Candidate functions evaluated on sampled states (the matrix Φ)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    columns: List[Monomial]
    values: np.ndarray
    state_dim: int = Field(..., ge=1)
    max_degree: int = Field(..., ge=0)
    scales: Optional[np.ndarray] = Field(
        default=None,
        description="Per-column divisors applied to values when max-abs scaling was requested",
    )

    @model_validator(mode="after")
    def _consistent_shapes(self) -> "BasisMatrix":
        if self.values.ndim != 2:
            raise ValueError("Basis values must be a 2-D array")
        if self.values.shape[1] != len(self.columns):
            raise ValueError(
                f"{len(self.columns)} monomials but {self.values.shape[1]} value columns"
            )
        for monomial in self.columns:
            if monomial.state_dim != self.state_dim:
                raise ValueError("Monomial dimension does not match state_dim")
        if self.scales is not None and self.scales.shape != (len(self.columns),):
            raise ValueError("scales must hold one entry per column")
        return self

    @property
    def n_samples(self) -> int:
        return self.values.shape[0]

    @property
    def n_candidates(self) -> int:
        return self.values.shape[1]

    def labels(self, names: Optional[Sequence[str]] = None) -> List[str]:
        return [monomial.label(names) for monomial in self.columns]

    def index_of(self, exponents: Sequence[int]) -> int:
        """Column index of the monomial with the given exponents."""
        target = tuple(exponents)
        for index, monomial in enumerate(self.columns):
            if monomial.exponents == target:
                return index
        raise KeyError(f"No monomial with exponents {target}")
