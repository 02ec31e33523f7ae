"""
Kraskov-Stoegbauer-Grassberger mutual information and its conditional
(Frenzel-Pompe) extension, in nats.

Before neighbour search every block column is divided by its standard
deviation and nudged by a tiny deterministic jitter that depends only on
the value being nudged. Both steps are functions of the multiset of
samples, so permuting rows never changes an estimate, and duplicated
samples stay duplicated instead of producing arbitrary tie orders.
"""

import math
from typing import Optional

import numpy as np
from scipy.special import digamma

from sysid.config import settings
from sysid.core.errors import DataError
from sysid.infotheory.knn import count_strictly_within, kth_neighbor_distance
from sysid.infotheory.schemas import SampleCloud

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def _splitmix64(bits: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = bits + _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))


def as_samples(values, n_rows: Optional[int] = None) -> np.ndarray:
    block = np.asarray(values, dtype=np.float64)
    if block.ndim == 1:
        block = block[:, None]
    if block.ndim != 2:
        raise DataError(f"Samples must be ℓ or ℓ×D arrays, got shape {block.shape}")
    if n_rows is not None and block.shape[0] != n_rows:
        raise DataError(f"All blocks need {n_rows} rows, got {block.shape[0]}")
    return block


def _order_free_std(column: np.ndarray) -> float:
    # fsum rounds exactly, so the result does not depend on row order.
    n = column.size
    mean = math.fsum(column) / n
    return math.sqrt(math.fsum((column - mean) ** 2) / n)


def _normalize(block: np.ndarray) -> np.ndarray:
    """Unit-variance columns plus value-hash jitter."""
    out = np.empty_like(block)
    for j in range(block.shape[1]):
        column = block[:, j]
        std = _order_free_std(column)
        if std > 0.0 and math.isfinite(std):
            column = column / std
        scale = float(np.max(np.abs(column))) or 1.0

        # +0.0 folds -0.0 onto 0.0 so both hash alike.
        bits = np.ascontiguousarray(column + 0.0).view(np.uint64)
        unit = (_splitmix64(bits) >> np.uint64(11)).astype(np.float64) * 2.0**-53
        out[:, j] = column + (unit - 0.5) * settings.TIE_JITTER * scale
    return out


def _mean(values: np.ndarray) -> float:
    return math.fsum(values.tolist()) / values.size


def _resolve_k(k: Optional[int]) -> int:
    k = settings.KNN_K if k is None else k
    if k < 1:
        raise DataError(f"k must be >= 1, got {k}")
    return k


def _cloud(x, y, z, k: int) -> SampleCloud:
    xb = as_samples(x)
    n = xb.shape[0]
    if n <= k:
        raise DataError(f"Need more than k={k} samples, got {n}")

    blocks = {"x": _normalize(xb), "y": _normalize(as_samples(y, n))}
    if z is not None:
        zb = as_samples(z, n)
        if zb.shape[1] > 0:
            blocks["z"] = _normalize(zb)

    return SampleCloud(
        points=np.hstack(list(blocks.values())),
        block_dims={name: block.shape[1] for name, block in blocks.items()},
    )


def estimate_mi(x, y, k: Optional[int] = None) -> float:
    """
    KSG estimate (first variant) of I(X; Y) with max-norm neighbourhoods.

    Args:
        x: ℓ or ℓ×Dx samples.
        y: ℓ or ℓ×Dy samples.
        k (Optional[int]): Neighbour count, ``settings.KNN_K`` when None.

    Returns:
        float: Estimate in nats. Small negative values are estimator bias.
    """
    k = _resolve_k(k)
    cloud = _cloud(x, y, None, k)
    n = cloud.n_samples

    eps = kth_neighbor_distance(cloud.points, k)
    nx = count_strictly_within(cloud.block("x"), eps)
    ny = count_strictly_within(cloud.block("y"), eps)

    return float(digamma(k) + digamma(n) - _mean(digamma(nx + 1) + digamma(ny + 1)))


def estimate_cmi(x, y, z=None, k: Optional[int] = None) -> float:
    """
    k-NN estimate of I(X; Y | Z).

    An empty or missing Z reduces to :func:`estimate_mi`.
    """
    k = _resolve_k(k)
    if z is None or as_samples(z).shape[1] == 0:
        return estimate_mi(x, y, k)

    cloud = _cloud(x, y, z, k)

    eps = kth_neighbor_distance(cloud.points, k)
    nxz = count_strictly_within(cloud.block("x", "z"), eps)
    nyz = count_strictly_within(cloud.block("y", "z"), eps)
    nz = count_strictly_within(cloud.block("z"), eps)

    return float(digamma(k) - _mean(digamma(nxz + 1) + digamma(nyz + 1) - digamma(nz + 1)))
