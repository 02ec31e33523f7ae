from unittest.mock import patch

import numpy as np
import pytest

from sysid.bench.runner import aggregate_runs, derive_seed, invoke_solver, run_experiment
from sysid.bench.schemas import ExperimentConfig, RunRecord, SolverSpec
from sysid.core.errors import ConfigError, SolverError
from sysid.solvers.schemas import SolverId


def _config(**overrides):
    base = {
        "system": "double_well",
        "basis_degree": 10,
        "n_samples": 61,
        "solvers": [{"name": "ls"}, {"name": "sindy", "params": {"lambda": 0.5}}],
        "n_runs": 2,
        "seed": 3,
    }
    return ExperimentConfig.model_validate({**base, **overrides})


def test_derive_seed_is_stable():
    assert derive_seed(1, 2) == derive_seed(1, 2)
    assert derive_seed(1, 2) != derive_seed(1, 3)


def test_invoke_rejects_unknown_parameter(double_well_problem):
    basis, targets = double_well_problem
    with pytest.raises(ConfigError):
        invoke_solver(SolverSpec(name="sindy", params={"mu": 1.0}), basis, targets, seed=0)


def test_invoke_rejects_invalid_er_parameter(double_well_problem):
    basis, targets = double_well_problem
    with pytest.raises(ConfigError):
        invoke_solver(SolverSpec(name="er", params={"knn_k": 0}), basis, targets, seed=0)


def test_invoke_fixed_hyperparameter(double_well_problem):
    basis, targets = double_well_problem
    solution, trace = invoke_solver(
        SolverSpec(name="ols", params={"threshold": 1.0}), basis, targets, seed=0
    )
    assert solution.solver_id == SolverId.OLS
    assert solution.hyperparams["threshold"] == 1.0
    assert trace is None


def test_invoke_cross_validates_when_unset(double_well_problem):
    basis, targets = double_well_problem
    solution, _ = invoke_solver(
        SolverSpec(name="ols", params={"grid": [0.5, 1.0], "n_folds": 3}), basis, targets, seed=0
    )
    assert solution.hyperparams["grid"] == [0.5, 1.0]
    assert solution.hyperparams["n_folds"] == 3


def test_experiment_records_every_solver_and_run():
    report = run_experiment(_config())
    assert len(report.runs) == 4
    assert [(r.solver, r.run_index) for r in report.runs] == [
        (SolverId.LS, 0),
        (SolverId.SINDY, 0),
        (SolverId.LS, 1),
        (SolverId.SINDY, 1),
    ]
    assert [a.solver for a in report.aggregates] == [SolverId.LS, SolverId.SINDY]
    ls = report.aggregates[0]
    assert ls.exact_recovery_probability == 0.0
    assert ls.median_error > 0.0
    assert report.metadata["sysid_version"]


def test_experiment_is_reproducible():
    config = _config(
        system="lorenz",
        basis_degree=2,
        n_samples=100,
        noise={"eps1": 0.01},
        system_params={"dt": 0.01, "burn_in": 50},
    )
    first = run_experiment(config)
    second = run_experiment(config, max_workers=2)
    strip = {"wall_time"}
    assert [r.model_dump(exclude=strip) for r in first.runs] == [
        r.model_dump(exclude=strip) for r in second.runs
    ]


def test_solver_failure_is_recorded():
    with patch("sysid.bench.runner.solve_sindy", side_effect=SolverError("boom")):
        report = run_experiment(_config(n_runs=1))
    sindy = [r for r in report.runs if r.solver is SolverId.SINDY][0]
    assert sindy.error == "SolverError: boom"
    assert sindy.parameter_error is None
    assert report.aggregates[1].n_failed == 1


def test_config_errors_abort_the_experiment():
    config = _config(solvers=[{"name": "lasso", "params": {"alpha": 1.0}}])
    with pytest.raises(ConfigError):
        run_experiment(config)


def test_aggregate_quartiles():
    config = _config(solvers=[{"name": "ls"}])
    records = [
        RunRecord(
            solver="ls",
            run_index=i,
            run_seed=i,
            n_rows=10,
            n_raw_samples=10,
            parameter_error=float(e),
            exact_recovery=e < 2,
        )
        for i, e in enumerate([1, 2, 3, 4, 5])
    ]
    records.append(
        RunRecord(solver="ls", run_index=5, run_seed=5, n_rows=0, n_raw_samples=0, error="x")
    )
    (aggregate,) = aggregate_runs(config, records)
    assert aggregate.n_runs == 6
    assert aggregate.n_failed == 1
    assert aggregate.median_error == 3.0
    assert aggregate.q1_error == 2.0
    assert aggregate.q3_error == 4.0
    assert aggregate.exact_recovery_probability == pytest.approx(1 / 6)


def test_unscored_problem_has_no_recovery_rate(tmp_path):
    from sysid.dynamics.io import write_csv
    from sysid.dynamics.schemas import TimeSeriesSet

    states = np.random.default_rng(0).normal(size=(20, 1))
    path = write_csv(TimeSeriesSet.from_states(states, 0.1), tmp_path / "x.csv")
    report = run_experiment(
        _config(system="custom_csv", csv_path=str(path), basis_degree=2, n_samples=18, n_runs=1)
    )
    assert report.aggregates[0].exact_recovery_probability is None
    assert report.aggregates[0].median_error is None
