"""
K-fold hyperparameter selection by held-out residual.
"""

from typing import Callable, List, Tuple

import numpy as np

from sysid.common.parallel import ordered_map
from sysid.core.errors import ConfigError
from sysid.solvers.schemas import CrossValidationPlan
from sysid.utils.logger import get_logger

logger = get_logger(__name__)

FitFn = Callable[[np.ndarray, np.ndarray, float], np.ndarray]


def kfold_indices(n_samples: int, n_folds: int) -> List[np.ndarray]:
    """
    Contiguous folds that partition range(n_samples).

    Fold sizes differ by at most one; the first folds take the extra rows.
    """
    if n_folds < 2 or n_folds > n_samples:
        raise ConfigError(f"Cannot split {n_samples} samples into {n_folds} folds")
    return [np.asarray(fold) for fold in np.array_split(np.arange(n_samples), n_folds)]


def cross_validate(
    values: np.ndarray,
    target: np.ndarray,
    plan: CrossValidationPlan,
    fit: FitFn,
) -> Tuple[int, List[float]]:
    """
    Score every grid value by its mean held-out residual norm.

    Args:
        values (np.ndarray): Φ (ℓ×K).
        target (np.ndarray): f (ℓ).
        plan (CrossValidationPlan): Folds and grid.
        fit (FitFn): ``fit(Φ_train, f_train, value) -> coefficients``.

    Returns:
        Tuple[int, List[float]]: Index of the winning grid value (lowest
        index on ties) and the score of every grid value.
    """
    folds = kfold_indices(values.shape[0], plan.n_folds)

    def score(value: float) -> float:
        residuals = []
        for held_out in folds:
            train = np.ones(values.shape[0], dtype=bool)
            train[held_out] = False
            coefficients = fit(values[train], target[train], value)
            residuals.append(np.linalg.norm(values[held_out] @ coefficients - target[held_out]))
        return float(np.mean(residuals))

    scores = ordered_map(score, plan.grid)
    # NaN scores (diverged fits) never win.
    ranked = np.where(np.isfinite(scores), scores, np.inf)
    best = int(np.argmin(ranked))

    logger.debug(
        "Cross-validation finished",
        extra={"grid_size": len(plan.grid), "best_value": plan.grid[best], "best_score": scores[best]},
    )
    return best, scores
