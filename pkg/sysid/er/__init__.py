from sysid.er.schemas import BackwardRemoval, ErConfig, ErTrace, ForwardStep
from sysid.er.service import (
    backward_er,
    entropic_regression,
    forward_er,
    regress_on_support,
    static_tolerance,
)

__all__ = [
    "BackwardRemoval",
    "ErConfig",
    "ErTrace",
    "ForwardStep",
    "backward_er",
    "entropic_regression",
    "forward_er",
    "regress_on_support",
    "static_tolerance",
]
