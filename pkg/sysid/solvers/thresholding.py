"""
Sequentially thresholded least squares (SINDy) and its outlier-trimming
variant (TW).
"""

from typing import List, Optional, Tuple

import numpy as np

from sysid.basis.service import PhiLike
from sysid.core.errors import ConfigError, SolverError
from sysid.solvers.least_squares import check_problem, min_norm_lstsq, refit_on_support
from sysid.solvers.schemas import SolverId, SparseSolution, make_solution
from sysid.utils.logger import get_logger

logger = get_logger(__name__)

TRIMMING_RULE = "exclude row t when |(Φa - f)_t| > mu * ||Φa - f||_2 / sqrt(rows)"


def _stlsq(
    values: np.ndarray, target: np.ndarray, lam: float, max_iter: Optional[int] = None
) -> Tuple[np.ndarray, List[int], int]:
    coef = min_norm_lstsq(values, target)
    support = [i for i in range(coef.size) if abs(coef[i]) >= lam]
    max_iter = max_iter or coef.size + 1

    for iteration in range(1, max_iter + 1):
        coef = refit_on_support(values, target, support)
        survivors = [i for i in support if abs(coef[i]) >= lam]
        if survivors == support:
            return coef, support, iteration
        support = survivors

    return refit_on_support(values, target, support), support, max_iter


def solve_sindy(phi: PhiLike, f, lam: float, *, max_iter: Optional[int] = None) -> SparseSolution:
    """
    Sequential thresholded least squares.

    Coefficients with |a_i| < λ are dropped and the rest refit until the
    support stops changing. The support may end up empty.

    Args:
        phi (PhiLike): Basis matrix Φ.
        f: Target vector.
        lam (float): Hard threshold λ > 0.
        max_iter (Optional[int]): Refit limit, K + 1 by default.
    """
    if lam <= 0:
        raise ConfigError(f"SINDy λ must be positive, got {lam}")
    values, target = check_problem(phi, f)

    coef, support, iterations = _stlsq(values, target, lam, max_iter)
    return make_solution(
        values,
        target,
        coef,
        SolverId.SINDY,
        support=support,
        hyperparams={"lambda": lam, "iterations": iterations},
    )


def solve_tw(
    phi: PhiLike,
    f,
    lam: float,
    mu: float,
    tol: float,
    *,
    max_iter: int = 100,
) -> SparseSolution:
    """
    Thresholded LS that alternately fits and trims suspected outlier rows.

    Every round recomputes residuals on all rows, keeps the rows within
    ``mu`` times the RMS residual and reruns the SINDy fit on them. Stops
    once the coefficient change drops below ``tol``.

    Raises:
        SolverError: when a round would trim every row.
    """
    for name, value in (("lambda", lam), ("mu", mu), ("tol", tol)):
        if value <= 0:
            raise ConfigError(f"TW {name} must be positive, got {value}")
    values, target = check_problem(phi, f)
    n_rows = values.shape[0]

    logger.info("TW trimming rule", extra={"rule": TRIMMING_RULE, "mu": mu})

    coef, support, _ = _stlsq(values, target, lam)
    trusted = np.ones(n_rows, dtype=bool)
    converged = False
    rounds = 0

    for rounds in range(1, max_iter + 1):
        residual = values @ coef - target
        cutoff = mu * np.linalg.norm(residual) / np.sqrt(n_rows)
        trusted = np.abs(residual) <= cutoff
        if not trusted.any():
            raise SolverError(f"TW trimmed all {n_rows} rows in round {rounds}")

        new_coef, support, _ = _stlsq(values[trusted], target[trusted], lam)
        change = float(np.linalg.norm(new_coef - coef))
        coef = new_coef
        if change < tol:
            converged = True
            break

    flags = [] if converged else ["not_converged"]
    if not converged:
        logger.warning("TW did not settle", extra={"rounds": rounds, "mu": mu})

    return make_solution(
        values,
        target,
        coef,
        SolverId.TW,
        support=support,
        hyperparams={
            "lambda": lam,
            "mu": mu,
            "tol": tol,
            "rounds": rounds,
            "trimmed_rows": np.flatnonzero(~trusted).tolist(),
            "trimming_rule": TRIMMING_RULE,
        },
        flags=flags,
    )
