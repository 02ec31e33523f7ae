import numpy as np
import pytest

from sysid.bench.problems import prepare_problem
from sysid.bench.schemas import ExperimentConfig
from sysid.bench.scoring import score_solution
from sysid.dynamics.ground_truth import lorenz_ground_truth
from sysid.dynamics.systems import simulate_polynomial_model
from sysid.er.service import regress_on_support
from sysid.solvers.least_squares import solve_ls
from sysid.solvers.thresholding import solve_sindy


def test_regress_on_full_support_is_least_squares(lorenz_problem):
    basis, targets = lorenz_problem
    coefficients = regress_on_support(basis, targets[:, 0], range(basis.n_candidates))
    np.testing.assert_allclose(coefficients, solve_ls(basis, targets[:, 0]).coefficients, atol=1e-9)


def test_regress_on_true_lorenz_support(lorenz_problem):
    basis, targets = lorenz_problem
    truth = lorenz_ground_truth(10.0, 28.0, 8.0 / 3.0, 2)
    for dim, support in enumerate(truth.support):
        coefficients = regress_on_support(basis, targets[:, dim], sorted(support))
        np.testing.assert_allclose(coefficients, truth.coefficients[:, dim], atol=1e-6)


def test_regress_on_empty_support(lorenz_problem):
    basis, targets = lorenz_problem
    assert not np.any(regress_on_support(basis, targets[:, 0], []))


def test_sindy_recovers_exact_lorenz(lorenz_problem):
    basis, targets = lorenz_problem
    truth = lorenz_ground_truth(10.0, 28.0, 8.0 / 3.0, 2)
    solutions = [solve_sindy(basis, targets[:, dim], 0.1) for dim in range(3)]
    error, exact = score_solution(truth, solutions)
    assert exact
    assert error < 1e-6


def test_recovered_lorenz_model_resimulates(lorenz_problem):
    basis, targets = lorenz_problem
    truth = lorenz_ground_truth(10.0, 28.0, 8.0 / 3.0, 2)
    solutions = [solve_sindy(basis, targets[:, dim], 0.1) for dim in range(3)]
    coefficients = np.column_stack([s.coefficients for s in solutions])
    z0 = [1.0, 1.0, 1.0]
    recovered = simulate_polynomial_model(coefficients, basis.columns, z0, 0.01, 100)
    reference = simulate_polynomial_model(truth.coefficients, truth.columns, z0, 0.01, 100)
    np.testing.assert_allclose(recovered.states, reference.states, atol=1e-4)


def test_kse_pipeline_ground_truth_residual():
    config = ExperimentConfig.model_validate(
        {
            "system": "kse",
            "system_params": {"n_modes": 4, "nu": 0.2, "burn_in": 100, "dt": 0.001},
            "basis_degree": 2,
            "n_samples": 200,
            "solvers": [{"name": "ls"}],
        }
    )
    problem = prepare_problem(config, run_seed=4)
    # Central differences are second-order accurate in dt.
    residual = problem.basis.values @ problem.truth.coefficients - problem.targets
    assert np.abs(residual).max() < 1e-3


def test_double_well_ls_residual(double_well_problem):
    basis, targets = double_well_problem
    solution = solve_ls(basis, targets)
    assert solution.residual_norm == pytest.approx(0.6535, abs=1e-3)
    assert solution.n_terms == 11


def test_entropic_regression_is_deterministic(rng):
    from sysid.er.schemas import ErConfig
    from sysid.er.service import entropic_regression
    from sysid.infotheory.schemas import ShuffleTestConfig

    phi = rng.normal(size=(120, 6))
    f = phi[:, 2] - 0.5 * phi[:, 5] + 0.05 * rng.normal(size=120)
    config = ErConfig(seed=3, shuffle=ShuffleTestConfig(n_shuffles=20))

    first_solution, first_trace = entropic_regression(phi, f, config)
    second_solution, second_trace = entropic_regression(phi, f, config)

    assert first_trace.model_dump() == second_trace.model_dump()
    np.testing.assert_array_equal(first_solution.coefficients, second_solution.coefficients)
    np.testing.assert_allclose(
        regress_on_support(phi, f, first_solution.support), first_solution.coefficients
    )
