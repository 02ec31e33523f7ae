"""
Exact max-norm neighbour queries.

A k-d tree serves low-dimensional clouds; above ``KDTREE_MAX_DIM``
columns the queries fall back to chunked brute force, where tree
pruning stops paying off. Counts on a single column use binary search.
"""

import numpy as np
from scipy.spatial import KDTree
from scipy.spatial.distance import cdist

from sysid.config import settings

_CHUNK = 1024


def kth_neighbor_distance(points: np.ndarray, k: int) -> np.ndarray:
    """Max-norm distance from every point to its k-th nearest other point."""
    if points.shape[1] <= settings.KDTREE_MAX_DIM:
        distances, _ = KDTree(points).query(points, k=[k + 1], p=np.inf)
        return distances[:, 0]

    out = np.empty(points.shape[0])
    for start in range(0, points.shape[0], _CHUNK):
        block = cdist(points[start : start + _CHUNK], points, metric="chebyshev")
        # Position k after sorting skips the zero self-distance.
        out[start : start + _CHUNK] = np.partition(block, k, axis=1)[:, k]
    return out


def _count_on_line(values: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """Points with |v_j - v_i| <= inner_i, via binary search on the sorted values."""
    ordered = np.sort(values)
    n = ordered.size
    lo = np.searchsorted(ordered, values - inner, side="left")
    hi = np.searchsorted(ordered, values + inner, side="right")

    # values +- inner is rounded; settle each edge on the exact distance test.
    while True:
        shrink = (hi > 0) & (ordered[np.maximum(hi - 1, 0)] - values > inner)
        grow = (hi < n) & (ordered[np.minimum(hi, n - 1)] - values <= inner)
        if not (shrink.any() or grow.any()):
            break
        hi = hi - shrink + grow
    while True:
        shrink = (lo < n) & (values - ordered[np.minimum(lo, n - 1)] > inner)
        grow = (lo > 0) & (values - ordered[np.maximum(lo - 1, 0)] <= inner)
        if not (shrink.any() or grow.any()):
            break
        lo = lo + shrink - grow
    return (hi - lo).astype(np.int64)


def count_strictly_within(points: np.ndarray, radii: np.ndarray) -> np.ndarray:
    """
    Number of other points at max-norm distance strictly below each radius.

    Points with a zero radius get zero neighbours.
    """
    inner = np.nextafter(radii, 0.0)

    if points.shape[1] == 1:
        counts = _count_on_line(points[:, 0], inner)
    elif points.shape[1] <= settings.KDTREE_MAX_DIM:
        counts = KDTree(points).query_ball_point(points, r=inner, p=np.inf, return_length=True)
        counts = np.asarray(counts, dtype=np.int64)
    else:
        counts = np.empty(points.shape[0], dtype=np.int64)
        for start in range(0, points.shape[0], _CHUNK):
            block = cdist(points[start : start + _CHUNK], points, metric="chebyshev")
            counts[start : start + _CHUNK] = (block <= inner[start : start + _CHUNK, None]).sum(axis=1)

    # Drop the point itself.
    return np.where(radii > 0.0, counts - 1, 0)
