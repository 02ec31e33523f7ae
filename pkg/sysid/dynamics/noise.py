"""
Observation noise with occasional outliers.
"""

import numpy as np

from sysid.dynamics.schemas import NoiseModel, TimeSeriesSet
from sysid.utils.logger import get_logger

logger = get_logger(__name__)


def sample_noise(shape, model: NoiseModel) -> np.ndarray:
    """
    Draw mixture noise of the given shape.

    Entries are N(0, eps1^2) with probability 1 - p and
    N(0, eps1^2 + eps2^2) otherwise. With ``per_row`` one outlier
    indicator covers a whole time row.
    """
    rng = np.random.default_rng(model.seed)
    mask_shape = (shape[0], 1) if model.per_row and len(shape) == 2 else shape
    outlier = rng.random(mask_shape) < model.p
    std = np.where(outlier, np.hypot(model.eps1, model.eps2), model.eps1)
    return rng.standard_normal(shape) * std


def inject_noise(series: TimeSeriesSet, model: NoiseModel) -> TimeSeriesSet:
    """Return a corrupted copy of the series; times are kept as they are."""
    if model.is_silent:
        return TimeSeriesSet(times=series.times.copy(), states=series.states.copy(), dt=series.dt)

    noisy = series.states + sample_noise(series.states.shape, model)
    logger.debug(
        "Noise injected",
        extra={"eps1": model.eps1, "eps2": model.eps2, "p": model.p, "seed": model.seed},
    )
    return TimeSeriesSet(times=series.times.copy(), states=noisy, dt=series.dt)
