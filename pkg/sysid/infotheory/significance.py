"""
Shuffle (permutation) tests for CMI significance.

``shuffle_threshold`` tests one pair. ``max_statistic_threshold`` tests
the largest of several candidate scores against the permutation
distribution of that largest score, which is what a greedy selection step
compares its winner with.
"""

from typing import List, Optional, Sequence

import numpy as np

from sysid.common.parallel import ordered_map
from sysid.core.errors import DataError
from sysid.infotheory.estimators import as_samples, estimate_cmi
from sysid.infotheory.schemas import ShuffleTestConfig
from sysid.utils.logger import get_logger

logger = get_logger(__name__)


def _replica_orders(n_rows: int, config: ShuffleTestConfig) -> List[np.ndarray]:
    # One spawned stream per replica: the sample does not depend on scheduling.
    streams = np.random.SeedSequence(config.seed).spawn(config.n_shuffles)
    return [np.random.default_rng(stream).permutation(n_rows) for stream in streams]


def _percentile(null: Sequence[float], config: ShuffleTestConfig) -> float:
    return sorted(null)[config.rank - 1]


def shuffle_null(x, y, z, k: Optional[int], config: ShuffleTestConfig) -> List[float]:
    """CMI estimates with the rows of ``y`` randomly permuted."""
    y = as_samples(y)
    orders = _replica_orders(y.shape[0], config)
    return ordered_map(lambda order: estimate_cmi(x, y[order], z, k), orders)


def shuffle_threshold(x, y, z, k: Optional[int], config: ShuffleTestConfig) -> float:
    """
    Significance threshold for I(X; Y | Z).

    Returns the ceil(alpha * n_shuffles)-th smallest value of the
    permutation null.
    """
    threshold = _percentile(shuffle_null(x, y, z, k, config), config)
    logger.debug(
        "Shuffle threshold",
        extra={"alpha": config.alpha, "n_shuffles": config.n_shuffles, "threshold": threshold},
    )
    return threshold


def max_statistic_null(
    candidates: Sequence, y, z, k: Optional[int], config: ShuffleTestConfig
) -> List[float]:
    """
    Per replica, the largest I(X_j; Y_perm | Z) over all candidates X_j.

    Every candidate sees the same permutation within a replica, and the
    permutations are the ones :func:`shuffle_null` would draw with the
    same config.

    Raises:
        DataError: no candidates.
    """
    if len(candidates) == 0:
        raise DataError("max statistic needs at least one candidate")
    y = as_samples(y)
    orders = _replica_orders(y.shape[0], config)

    def replica(order: np.ndarray) -> float:
        shuffled = y[order]
        return max(estimate_cmi(x, shuffled, z, k) for x in candidates)

    return ordered_map(replica, orders)


def max_statistic_threshold(
    candidates: Sequence, y, z, k: Optional[int], config: ShuffleTestConfig
) -> float:
    """
    Threshold for the largest of several candidate scores.

    Returns the ceil(alpha * n_shuffles)-th smallest value of
    :func:`max_statistic_null`. A winner above it is significant at
    level 1 - alpha across the whole candidate family.
    """
    threshold = _percentile(max_statistic_null(candidates, y, z, k, config), config)
    logger.debug(
        "Max-statistic threshold",
        extra={
            "alpha": config.alpha,
            "n_shuffles": config.n_shuffles,
            "candidates": len(candidates),
            "threshold": threshold,
        },
    )
    return threshold
