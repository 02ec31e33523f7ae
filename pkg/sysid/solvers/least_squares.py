"""
Least squares via the pseudoinverse, plus the support-restricted refit
shared by the greedy and thresholding solvers.
"""

from typing import Sequence

import numpy as np

from sysid.basis.service import PhiLike, as_matrix
from sysid.core.errors import DataError
from sysid.solvers.schemas import SolverId, SparseSolution, make_solution


def check_problem(phi: PhiLike, f) -> tuple:
    """Return (Φ, f) as float arrays after validating their shapes."""
    values = as_matrix(phi)
    target = np.asarray(f, dtype=np.float64).reshape(-1)
    if values.shape[0] == 0:
        raise DataError("The inverse problem has no samples")
    if target.size != values.shape[0]:
        raise DataError(f"f has {target.size} entries but Φ has {values.shape[0]} rows")
    return values, target


def min_norm_lstsq(values: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Minimum 2-norm solution Φ†f (SVD based, rank revealing)."""
    solution, *_ = np.linalg.lstsq(values, target, rcond=None)
    return solution


def refit_on_support(values: np.ndarray, target: np.ndarray, support: Sequence[int]) -> np.ndarray:
    """LS fit on the support columns; zeros everywhere else."""
    coefficients = np.zeros(values.shape[1])
    support = sorted(int(i) for i in support)
    if support:
        coefficients[support] = min_norm_lstsq(values[:, support], target)
    return coefficients


def solve_ls(phi: PhiLike, f) -> SparseSolution:
    """
    Minimum-norm least squares over every candidate.

    Args:
        phi (PhiLike): Basis matrix Φ (ℓ×K).
        f: Target vector (ℓ).

    Returns:
        SparseSolution: a = Φ†f; the support is every nonzero entry.
    """
    values, target = check_problem(phi, f)
    return make_solution(values, target, min_norm_lstsq(values, target), SolverId.LS)
