"""
Comparing identified models with the ground truth.
"""

from typing import Sequence, Tuple

import numpy as np

from sysid.core.errors import ConfigError
from sysid.dynamics.schemas import GroundTruth
from sysid.solvers.schemas import SparseSolution


def score_solution(truth: GroundTruth, solutions: Sequence[SparseSolution]) -> Tuple[float, bool]:
    """
    Parameter error and exact structural recovery.

    Args:
        truth (GroundTruth): K×N true coefficients.
        solutions (Sequence[SparseSolution]): One solution per dimension.

    Returns:
        Tuple[float, bool]: ||a_true - a_est||_2 over all dimensions stacked,
        and whether every dimension's support equals the true support.
    """
    if len(solutions) != truth.state_dim:
        raise ConfigError(
            f"Ground truth has {truth.state_dim} dimensions, got {len(solutions)} solutions"
        )
    n_candidates = truth.coefficients.shape[0]
    if any(s.coefficients.size != n_candidates for s in solutions):
        raise ConfigError(f"Solutions must have {n_candidates} coefficients to match the truth")

    estimate = np.column_stack([s.coefficients for s in solutions])
    error = float(np.linalg.norm((truth.coefficients - estimate).ravel()))
    exact = all(set(s.support) == true for s, true in zip(solutions, truth.support))
    return error, exact
