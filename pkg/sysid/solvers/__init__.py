from sysid.solvers.cross_validation import cross_validate, kfold_indices
from sysid.solvers.greedy import ols_default_grid, solve_ols, solve_ols_cv
from sysid.solvers.least_squares import refit_on_support, solve_ls
from sysid.solvers.schemas import CrossValidationPlan, SolverId, SparseSolution, make_solution
from sysid.solvers.sparse_penalized import (
    cs_epsilon_grid,
    lasso_lambda_grid,
    solve_cs,
    solve_cs_cv,
    solve_lasso,
    solve_lasso_cv,
)
from sysid.solvers.thresholding import solve_sindy, solve_tw

__all__ = [
    "CrossValidationPlan",
    "SolverId",
    "SparseSolution",
    "cross_validate",
    "cs_epsilon_grid",
    "kfold_indices",
    "lasso_lambda_grid",
    "make_solution",
    "ols_default_grid",
    "refit_on_support",
    "solve_cs",
    "solve_cs_cv",
    "solve_lasso",
    "solve_lasso_cv",
    "solve_ls",
    "solve_ols",
    "solve_ols_cv",
    "solve_sindy",
    "solve_tw",
]
