"""
Orthogonal least squares: greedy forward selection of the column that
removes the most residual energy, followed by an LS refit.
"""

from typing import List, Optional

import numpy as np

from sysid.basis.service import PhiLike
from sysid.core.errors import ConfigError
from sysid.solvers.cross_validation import cross_validate
from sysid.solvers.least_squares import check_problem, refit_on_support
from sysid.solvers.schemas import CrossValidationPlan, SolverId, SparseSolution, make_solution
from sysid.utils.logger import get_logger

logger = get_logger(__name__)

# Columns whose orthogonal remainder falls below this fraction of their
# norm are treated as already spanned.
_DEPENDENCE_TOL = 1e-10


def ols_default_grid() -> List[float]:
    """50 log-spaced residual thresholds in [1e-6, 100]."""
    return np.logspace(-6, 2, 50).tolist()


def _ols_support(values: np.ndarray, target: np.ndarray, threshold: float) -> List[int]:
    n_rows, n_cols = values.shape
    norms = np.linalg.norm(values, axis=0)
    remainder = values.copy()
    residual = target.copy()
    selected: List[int] = []
    available = norms > 0.0

    while np.linalg.norm(residual) > threshold and available.any():
        energy = np.sum(remainder * remainder, axis=0)
        usable = available & (energy > (_DEPENDENCE_TOL * norms) ** 2)
        if not usable.any():
            break

        gain = np.zeros(n_cols)
        gain[usable] = (remainder[:, usable].T @ residual) ** 2 / energy[usable]
        best = int(np.argmax(np.where(usable, gain, -1.0)))

        selected.append(best)
        available[best] = False

        q = remainder[:, best] / np.sqrt(energy[best])
        residual = residual - q * (q @ residual)
        remainder = remainder - np.outer(q, q @ remainder)

    return selected


def solve_ols(phi: PhiLike, f, threshold: float) -> SparseSolution:
    """
    Greedy OLS with an LS refit on the selected columns.

    Selection stops once the residual norm drops to ``threshold`` or no
    linearly independent column is left.

    Args:
        phi (PhiLike): Basis matrix Φ.
        f: Target vector.
        threshold (float): Residual norm at which selection stops (> 0).
    """
    if threshold <= 0:
        raise ConfigError(f"OLS threshold must be positive, got {threshold}")
    values, target = check_problem(phi, f)

    order = _ols_support(values, target, threshold)
    coefficients = refit_on_support(values, target, order)
    return make_solution(
        values,
        target,
        coefficients,
        SolverId.OLS,
        support=order,
        hyperparams={"threshold": threshold, "selection_order": order},
    )


def solve_ols_cv(phi: PhiLike, f, plan: Optional[CrossValidationPlan] = None) -> SparseSolution:
    """OLS with the stopping threshold chosen by k-fold cross-validation."""
    plan = plan or CrossValidationPlan(grid=ols_default_grid())
    values, target = check_problem(phi, f)

    def fit(train_phi: np.ndarray, train_f: np.ndarray, threshold: float) -> np.ndarray:
        return refit_on_support(train_phi, train_f, _ols_support(train_phi, train_f, threshold))

    best, scores = cross_validate(values, target, plan, fit)
    solution = solve_ols(values, target, plan.grid[best])

    logger.info(
        "OLS threshold selected",
        extra={"threshold": plan.grid[best], "support_size": solution.n_terms},
    )
    return solution.model_copy(
        update={
            "hyperparams": {
                **solution.hyperparams,
                "grid": list(plan.grid),
                "cv_scores": scores,
                "n_folds": plan.n_folds,
            }
        }
    )
