"""
Schemas for Entropic Regression configuration and audit traces.
"""

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from sysid.config import settings
from sysid.infotheory.schemas import ShuffleTestConfig


class ErConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    knn_k: int = Field(default_factory=lambda: settings.KNN_K, ge=1)
    tolerance_mode: Literal["static", "dynamic"] = "static"
    shuffle: ShuffleTestConfig = Field(default_factory=ShuffleTestConfig)
    max_forward_terms: Optional[int] = Field(
        default=None,
        ge=1,
        description="Cap on the forward support size; min(K, rows // 2) when unset",
    )
    seed: int = 0
    initial_support: Tuple[int, ...] = Field(
        default=(),
        description="Columns placed in the model before the forward search starts",
    )
    backward_tolerance: Literal["reuse", "recompute"] = "reuse"
    static_null: Literal["max_statistic", "self"] = Field(
        default="max_statistic",
        description=(
            "Null behind the static tolerance: the largest first-step score over "
            "all candidates against a shuffled f, or the shuffle test of I(f; f)"
        ),
    )


class ForwardStep(BaseModel):
    index: int
    cmi: float
    tolerance: float


class BackwardRemoval(BaseModel):
    index: int
    cmi: float
    tolerance: float


class ErTrace(BaseModel):
    """Every decision taken by one Entropic Regression call."""

    initial_support: List[int] = Field(default_factory=list)
    forward_steps: List[ForwardStep] = Field(default_factory=list)
    forward_stop: Optional[ForwardStep] = Field(
        default=None,
        description="Best rejected candidate that ended the forward stage, if any",
    )
    backward_removals: List[BackwardRemoval] = Field(default_factory=list)
    final_support: List[int] = Field(default_factory=list)
    tolerance: float = 0.0
    tolerance_mode: Literal["static", "dynamic"] = "static"

    @model_validator(mode="after")
    def _consistent(self) -> "ErTrace":
        chosen = self.initial_support + [step.index for step in self.forward_steps]
        if len(set(chosen)) != len(chosen):
            raise ValueError("forward selections must be distinct")
        if not {r.index for r in self.backward_removals} <= set(chosen):
            raise ValueError("backward removals must come from the forward selections")
        return self

    @property
    def forward_support(self) -> List[int]:
        return self.initial_support + [step.index for step in self.forward_steps]

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)
