"""
Trajectory files.

CSV layout (version 1)::

    # sysid-trajectory v1
    t,z1,z2,...,zN
    0,...

Binary layout: numpy ``.npz`` archive with ``format_version``, ``times``,
``states`` and ``dt``.
"""

from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from sysid.core.errors import DataError
from sysid.dynamics.schemas import TimeSeriesSet
from sysid.utils.logger import get_logger

logger = get_logger(__name__)

FORMAT_VERSION = 1
CSV_MAGIC = f"# sysid-trajectory v{FORMAT_VERSION}"

PathLike = Union[str, Path]


def write_csv(series: TimeSeriesSet, path: PathLike) -> Path:
    path = Path(path)
    frame = pd.DataFrame(
        series.states, columns=[f"z{i + 1}" for i in range(series.state_dim)]
    )
    frame.insert(0, "t", series.times)

    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        handle.write(CSV_MAGIC + "\n")
        frame.to_csv(handle, index=False, float_format="%.17g")

    logger.info("Trajectory written", extra={"path": str(path), "rows": series.n_samples})
    return path


def read_csv(path: PathLike) -> TimeSeriesSet:
    """
    Load a trajectory CSV.

    Files without the version comment are accepted as long as they carry
    a ``t`` column followed by state columns.
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, comment="#", float_precision="round_trip")
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise DataError(f"Cannot read trajectory CSV {path}: {exc}") from exc

    if "t" not in frame.columns or frame.shape[1] < 2:
        raise DataError(f"{path} needs a 't' column and at least one state column")
    if frame.shape[0] < 2:
        raise DataError(f"{path} holds fewer than two samples")

    times = frame["t"].to_numpy(dtype=np.float64)
    states = frame.drop(columns="t").to_numpy(dtype=np.float64)
    try:
        return TimeSeriesSet(times=times, states=states, dt=float(times[1] - times[0]))
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from exc


def write_binary(series: TimeSeriesSet, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("wb") as handle:
        np.savez(
            handle,
            format_version=np.int64(FORMAT_VERSION),
            times=series.times,
            states=series.states,
            dt=np.float64(series.dt),
        )
    return path


def read_binary(path: PathLike) -> TimeSeriesSet:
    path = Path(path)
    try:
        with np.load(path) as archive:
            version = int(archive["format_version"])
            if version != FORMAT_VERSION:
                raise DataError(f"{path}: unsupported trajectory format v{version}")
            return TimeSeriesSet(
                times=archive["times"], states=archive["states"], dt=float(archive["dt"])
            )
    except (OSError, KeyError) as exc:
        raise DataError(f"Cannot read trajectory archive {path}: {exc}") from exc
