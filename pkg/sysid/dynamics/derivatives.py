"""
Finite-difference derivative estimation aligned with the source samples.
"""

from typing import Literal, Tuple

import numpy as np

from sysid.core.errors import ConfigError, DataError
from sysid.dynamics.schemas import TimeSeriesSet

DerivativeScheme = Literal["forward", "central", "map"]

_MIN_SAMPLES = {"forward": 2, "central": 3, "map": 2}


def estimate_derivatives(
    series: TimeSeriesSet, scheme: DerivativeScheme = "central"
) -> Tuple[np.ndarray, TimeSeriesSet]:
    """
    Estimate the regression targets and the states they belong to.

    central: (z_{k+1} - z_{k-1}) / (t_{k+1} - t_{k-1}) on interior samples.
    forward: (z_{k+1} - z_k) / (t_{k+1} - t_k) on all but the last sample.
    map: next-state values z_{k+1}, for discrete-time systems.

    Returns:
        Tuple[np.ndarray, TimeSeriesSet]: ℓ'×N targets and the aligned
        series; row r of one corresponds to row r of the other.
    """
    if scheme not in _MIN_SAMPLES:
        raise ConfigError(f"Unknown derivative scheme: {scheme}")
    if series.n_samples < _MIN_SAMPLES[scheme]:
        raise DataError(
            f"The {scheme} scheme needs at least {_MIN_SAMPLES[scheme]} samples, "
            f"got {series.n_samples}"
        )

    z, t = series.states, series.times

    if scheme == "central":
        spans = (t[2:] - t[:-2])[:, None]
        return (z[2:] - z[:-2]) / spans, series.take(1, -1)

    if scheme == "forward":
        spans = (t[1:] - t[:-1])[:, None]
        return (z[1:] - z[:-1]) / spans, series.take(0, -1)

    return z[1:].copy(), series.take(0, -1)
