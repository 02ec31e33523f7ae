"""
l1-penalized and l1-minimizing solvers.

Lasso:  min ||Φa - f||^2 + λ||a||_1 by cyclic coordinate descent.
CS:     min ||a||_1 s.t. ||Φa - f|| <= ε by ADMM operator splitting.

Both report non-convergence (and, for CS, constraint violation) as
flags on the returned solution instead of raising.
"""

from typing import List, Optional, Tuple

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from sysid.basis.service import PhiLike
from sysid.core.errors import ConfigError
from sysid.solvers.cross_validation import cross_validate
from sysid.solvers.least_squares import check_problem, refit_on_support
from sysid.solvers.schemas import CrossValidationPlan, SolverId, SparseSolution, make_solution
from sysid.utils.logger import get_logger

logger = get_logger(__name__)


def soft_threshold(value, threshold):
    return np.sign(value) * np.maximum(np.abs(value) - threshold, 0.0)


# ---------------- LASSO ---------------- #


def _lasso_cd(
    values: np.ndarray,
    target: np.ndarray,
    lam: float,
    tol: float,
    max_iter: int,
) -> Tuple[np.ndarray, int, bool]:
    gram = values.T @ values
    corr = values.T @ target
    diag = np.diag(gram).copy()
    coef = np.zeros(values.shape[1])
    fitted = np.zeros(values.shape[1])  # gram @ coef
    half = 0.5 * lam

    for sweep in range(1, max_iter + 1):
        largest_step = 0.0
        for i in range(coef.size):
            if diag[i] == 0.0:
                continue
            rho = corr[i] - fitted[i] + diag[i] * coef[i]
            new = soft_threshold(rho, half) / diag[i]
            step = new - coef[i]
            if step != 0.0:
                fitted += gram[:, i] * step
                coef[i] = new
                largest_step = max(largest_step, abs(step))
        if largest_step <= tol * max(1.0, float(np.max(np.abs(coef)))):
            return coef, sweep, True

    return coef, max_iter, False


def solve_lasso(
    phi: PhiLike,
    f,
    lam: float,
    *,
    tol: float = 1e-8,
    max_iter: int = 5000,
) -> SparseSolution:
    """
    Lasso by cyclic coordinate descent on the Gram matrix.

    Args:
        phi (PhiLike): Basis matrix Φ.
        f: Target vector.
        lam (float): Penalty weight λ >= 0 on ||a||_1.
        tol (float): Largest coordinate step, relative to max|a|, at which
            a sweep counts as converged.
        max_iter (int): Sweep limit; exceeding it flags ``not_converged``.
    """
    if lam < 0:
        raise ConfigError(f"Lasso λ must be nonnegative, got {lam}")
    values, target = check_problem(phi, f)

    coef, sweeps, converged = _lasso_cd(values, target, lam, tol, max_iter)
    flags = [] if converged else ["not_converged"]
    if not converged:
        logger.warning("Lasso hit the sweep limit", extra={"lambda": lam, "sweeps": sweeps})

    return make_solution(
        values,
        target,
        coef,
        SolverId.LASSO,
        hyperparams={"lambda": lam, "sweeps": sweeps},
        flags=flags,
    )


def lasso_lambda_grid(phi: PhiLike, f, n: int = 10, ratio: float = 1e-4) -> List[float]:
    """n log-spaced λ values from 2||Φᵀf||_∞ (all-zero solution) down by ``ratio``."""
    values, target = check_problem(phi, f)
    lam_max = 2.0 * float(np.max(np.abs(values.T @ target)))
    if lam_max == 0.0:
        return [0.0]
    return np.geomspace(lam_max, lam_max * ratio, n).tolist()


def solve_lasso_cv(
    phi: PhiLike,
    f,
    plan: Optional[CrossValidationPlan] = None,
    *,
    max_iter: int = 5000,
) -> SparseSolution:
    """Lasso with λ picked by k-fold cross-validation, then refit on all rows."""
    values, target = check_problem(phi, f)
    plan = plan or CrossValidationPlan(grid=lasso_lambda_grid(values, target))

    def fit(train_phi: np.ndarray, train_f: np.ndarray, lam: float) -> np.ndarray:
        return _lasso_cd(train_phi, train_f, lam, 1e-8, max_iter)[0]

    best, scores = cross_validate(values, target, plan, fit)
    solution = solve_lasso(values, target, plan.grid[best], max_iter=max_iter)
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


# ---------------- COMPRESSIVE SENSING ---------------- #


def _project_ball(v: np.ndarray, radius: float) -> np.ndarray:
    norm = np.linalg.norm(v)
    return v if norm <= radius else v * (radius / norm)


def _cs_admm(
    values: np.ndarray,
    target: np.ndarray,
    epsilon: float,
    tol_feas: float,
    tol_stat: float,
    max_iter: int,
) -> Tuple[np.ndarray, int, bool]:
    """
    ADMM on  min Σ w_i|b_i| + I(||r|| <= ε)  s.t.  x = b, Φ̃x - f = r.

    Columns are normalized (Φ̃ = Φ / d) so the weights are w_i = 1/d_i
    rescaled to max 1; the returned vector is in the original units.
    """
    n_rows, n_cols = values.shape
    norms = np.linalg.norm(values, axis=0)
    live = norms > 0.0
    scale = np.where(live, norms, 1.0)
    unit = values / scale
    weights = np.where(live, 1.0 / scale, np.inf)
    weights = weights / np.max(weights[live])

    rho = 1.0
    factor = cho_factor(np.eye(n_cols) + unit.T @ unit)
    x = np.zeros(n_cols)
    b = np.zeros(n_cols)
    r = np.zeros(n_rows)
    u1 = np.zeros(n_cols)
    u2 = np.zeros(n_rows)
    f_scale = max(1.0, float(np.linalg.norm(target)))

    for iteration in range(1, max_iter + 1):
        x = cho_solve(factor, (b - u1) + unit.T @ (r + target - u2))
        fitted = unit @ x

        b_old, r_old = b, r
        b = np.where(live, soft_threshold(x + u1, weights / rho), 0.0)
        r = _project_ball(fitted - target + u2, epsilon)

        u1 = u1 + x - b
        u2 = u2 + fitted - target - r

        primal = np.sqrt(np.sum((x - b) ** 2) + np.sum((fitted - target - r) ** 2))
        dual = rho * np.linalg.norm((b - b_old) + unit.T @ (r - r_old))
        if primal <= tol_feas * f_scale and dual <= tol_stat * f_scale:
            return b / scale, iteration, True

        # Residual balancing keeps both residuals shrinking at similar rates.
        if iteration % 50 == 0:
            if primal > 10.0 * dual:
                rho, u1, u2 = 2.0 * rho, u1 / 2.0, u2 / 2.0
            elif dual > 10.0 * primal:
                rho, u1, u2 = rho / 2.0, u1 * 2.0, u2 * 2.0

    return b / scale, max_iter, False


def _polish(
    values: np.ndarray, target: np.ndarray, coef: np.ndarray, epsilon: float, slack: float
) -> np.ndarray:
    """
    Replace the ADMM iterate by an LS fit on its support when that fit
    stays feasible and does not increase the l1 norm.
    """
    if not np.any(coef):
        return coef
    l1 = float(np.sum(np.abs(coef)))
    peak = float(np.max(np.abs(coef)))
    for cutoff in (0.0, 1e-6 * peak, 1e-3 * peak):
        support = np.flatnonzero(np.abs(coef) > cutoff)
        if support.size == 0 or support.size > values.shape[0]:
            continue
        candidate = refit_on_support(values, target, support)
        feasible = np.linalg.norm(values @ candidate - target) <= epsilon + slack
        if feasible and np.sum(np.abs(candidate)) <= l1 * (1.0 + 1e-6) + 1e-12:
            return candidate
    return coef


def solve_cs(
    phi: PhiLike,
    f,
    epsilon: float,
    *,
    tol_feas: float = 1e-9,
    tol_stat: float = 1e-8,
    max_iter: int = 20000,
) -> SparseSolution:
    """
    Basis pursuit denoising: the smallest l1 norm within ε of the data.

    Args:
        phi (PhiLike): Basis matrix Φ.
        f: Target vector.
        epsilon (float): Residual budget ε >= 0.
        tol_feas (float): Primal residual tolerance (relative to max(1, ||f||)).
        tol_stat (float): Dual residual tolerance (same scale).
        max_iter (int): ADMM iteration limit.
    """
    if epsilon < 0:
        raise ConfigError(f"CS ε must be nonnegative, got {epsilon}")
    values, target = check_problem(phi, f)
    hyperparams = {"epsilon": epsilon}

    if np.linalg.norm(target) <= epsilon:
        return make_solution(
            values, target, np.zeros(values.shape[1]), SolverId.CS,
            hyperparams={**hyperparams, "iterations": 0},
        )

    coef, iterations, converged = _cs_admm(values, target, epsilon, tol_feas, tol_stat, max_iter)
    slack = 1e-6 * max(1.0, float(np.linalg.norm(target)))
    coef = _polish(values, target, coef, epsilon, slack)

    flags = [] if converged else ["not_converged"]
    if np.linalg.norm(values @ coef - target) > epsilon + slack:
        flags.append("infeasible")
    if flags:
        logger.warning("CS solution flagged", extra={"epsilon": epsilon, "flags": flags})

    return make_solution(
        values,
        target,
        coef,
        SolverId.CS,
        hyperparams={**hyperparams, "iterations": iterations},
        flags=flags,
    )


def cs_epsilon_grid(n: int = 10) -> List[float]:
    """n log-spaced residual budgets in [1e-6, 100]."""
    return np.logspace(-6, 2, n).tolist()


def solve_cs_cv(
    phi: PhiLike,
    f,
    plan: Optional[CrossValidationPlan] = None,
    *,
    max_iter: int = 5000,
) -> SparseSolution:
    """CS with ε picked by k-fold cross-validation, then refit on all rows."""
    values, target = check_problem(phi, f)
    plan = plan or CrossValidationPlan(grid=cs_epsilon_grid())

    def fit(train_phi: np.ndarray, train_f: np.ndarray, epsilon: float) -> np.ndarray:
        if np.linalg.norm(train_f) <= epsilon:
            return np.zeros(train_phi.shape[1])
        return _cs_admm(train_phi, train_f, epsilon, 1e-9, 1e-8, max_iter)[0]

    best, scores = cross_validate(values, target, plan, fit)
    solution = solve_cs(values, target, plan.grid[best], max_iter=max_iter)
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
