"""
Exception hierarchy for sysid.

Errors double-inherit from the matching builtin so callers that only
know about ValueError / RuntimeError keep working.
"""

from typing import Optional


class SysIdError(Exception):
    """Base class for every error raised by the toolkit."""


class ConfigError(SysIdError, ValueError):
    """Invalid configuration, or basis / ground-truth shapes that do not match."""


class DataError(SysIdError, ValueError):
    """Empty or too-short series, malformed CSV, mismatched sample counts."""


class SolverError(SysIdError, RuntimeError):
    """A solver reached a state it cannot recover from."""


class SimulationDivergedError(SysIdError, RuntimeError):
    """
    Raised when an integrator or map leaves the finite state bound.

    Attributes:
        step (int): Index of the first offending step.
        system (str): Name of the simulated system.
    """

    def __init__(self, message: str, *, step: int, system: Optional[str] = None):
        super().__init__(message)
        self.step = step
        self.system = system
