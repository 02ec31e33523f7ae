import numpy as np
import pytest

from sysid.core.errors import ConfigError
from sysid.solvers.schemas import CrossValidationPlan, SolverId
from sysid.solvers.sparse_penalized import (
    cs_epsilon_grid,
    lasso_lambda_grid,
    soft_threshold,
    solve_cs,
    solve_cs_cv,
    solve_lasso,
    solve_lasso_cv,
)


def test_soft_threshold():
    np.testing.assert_array_equal(
        soft_threshold(np.array([-3.0, -0.5, 0.0, 0.5, 3.0]), 1.0), [-2.0, 0.0, 0.0, 0.0, 2.0]
    )


def test_lasso_zero_penalty_is_least_squares(rng):
    phi = rng.normal(size=(60, 4))
    f = rng.normal(size=60)
    solution = solve_lasso(phi, f, 0.0, tol=1e-12)
    expected, *_ = np.linalg.lstsq(phi, f, rcond=None)
    np.testing.assert_allclose(solution.coefficients, expected, atol=1e-6)
    assert solution.flags == []


def test_lasso_orthonormal_design_closed_form(rng):
    q, _ = np.linalg.qr(rng.normal(size=(30, 5)))
    f = rng.normal(size=30)
    lam = 0.6
    solution = solve_lasso(q, f, lam)
    np.testing.assert_allclose(solution.coefficients, soft_threshold(q.T @ f, lam / 2), atol=1e-12)


def test_lasso_large_penalty_is_empty(rng):
    phi = rng.normal(size=(20, 6))
    f = rng.normal(size=20)
    lam_max = lasso_lambda_grid(phi, f)[0]
    solution = solve_lasso(phi, f, lam_max)
    assert solution.support == ()
    assert solution.solver_id == SolverId.LASSO


def test_lasso_sweep_limit_is_flagged(rng):
    phi = rng.normal(size=(20, 6))
    phi[:, 1] = phi[:, 0] + 0.01 * phi[:, 1]
    solution = solve_lasso(phi, rng.normal(size=20), 1e-3, max_iter=1)
    assert "not_converged" in solution.flags


def test_lasso_negative_penalty():
    with pytest.raises(ConfigError):
        solve_lasso(np.eye(2), np.ones(2), -1.0)


def test_lambda_grid_shape(rng):
    phi = rng.normal(size=(20, 3))
    f = rng.normal(size=20)
    grid = lasso_lambda_grid(phi, f)
    assert len(grid) == 10
    assert grid[0] == pytest.approx(2.0 * np.max(np.abs(phi.T @ f)))
    assert grid[-1] == pytest.approx(grid[0] * 1e-4)


def test_lasso_cv_records_grid(rng):
    phi = rng.normal(size=(50, 6))
    a = np.array([0.0, 2.0, 0.0, 0.0, -1.0, 0.0])
    solution = solve_lasso_cv(phi, phi @ a + 0.01 * rng.normal(size=50))
    assert len(solution.hyperparams["grid"]) == 10
    assert solution.hyperparams["lambda"] in solution.hyperparams["grid"]
    assert {1, 4} <= set(solution.support)


def test_cs_over_sparse_toy():
    phi = np.array([[6.0, 3.0, 2.0], [2.0, 1.0, 1.0]])
    f = np.array([6.0, 2.0])
    solution = solve_cs(phi, f, 1e-9)
    np.testing.assert_allclose(solution.coefficients, [1.0, 0.0, 0.0], atol=1e-3)
    assert np.abs(solution.coefficients).sum() == pytest.approx(1.0, abs=1e-3)
    assert "infeasible" not in solution.flags
    # The generating vector (0, 2, 0) is feasible with twice the l1 norm.
    np.testing.assert_allclose(phi @ np.array([0.0, 2.0, 0.0]), f)


def test_cs_toy_is_l1_optimal_on_the_solution_line():
    # Every exact solution of the toy system is (1 - b/2, b, 0).
    phi = np.array([[6.0, 3.0, 2.0], [2.0, 1.0, 1.0]])
    f = np.array([6.0, 2.0])
    found = np.abs(solve_cs(phi, f, 1e-9).coefficients).sum()
    line = np.linspace(-3.0, 3.0, 601)
    norms = np.abs(1.0 - line / 2.0) + np.abs(line)
    assert found <= norms.min() + 1e-3


def test_cs_budget_covers_target():
    solution = solve_cs(np.eye(3), np.array([0.1, 0.0, 0.0]), 1.0)
    assert solution.support == ()
    assert solution.hyperparams["iterations"] == 0


def test_cs_solution_is_feasible(rng):
    phi = rng.normal(size=(15, 30))
    a = np.zeros(30)
    a[[3, 17]] = [1.0, -0.5]
    f = phi @ a
    solution = solve_cs(phi, f, 1e-3)
    np.testing.assert_allclose(solution.coefficients, a, atol=1e-2)


def test_cs_negative_budget():
    with pytest.raises(ConfigError):
        solve_cs(np.eye(2), np.ones(2), -0.1)


def test_cs_default_grid():
    grid = cs_epsilon_grid()
    assert len(grid) == 10
    assert grid[0] == pytest.approx(1e-6)


def test_cs_cv_records_grid(rng):
    phi = rng.normal(size=(40, 5))
    f = phi @ np.array([1.0, 0.0, 0.0, 2.0, 0.0])
    plan = CrossValidationPlan(grid=[1e-6, 1.0], n_folds=4)
    solution = solve_cs_cv(phi, f, plan, max_iter=2000)
    assert solution.hyperparams["grid"] == [1e-6, 1.0]
    assert solution.hyperparams["n_folds"] == 4
