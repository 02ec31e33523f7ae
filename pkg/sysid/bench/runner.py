"""
Benchmark runner: simulate, corrupt, fit with every solver, score.
"""

import time
from datetime import datetime, timezone
from functools import partial
from typing import Any, Dict, List, Optional, Tuple

import mlflow
import numpy as np
from pydantic import ValidationError

from sysid import __version__
from sysid.bench.problems import Problem, prepare_problem
from sysid.bench.schemas import (
    ExperimentConfig,
    ExperimentReport,
    RunRecord,
    SolverAggregate,
    SolverSpec,
)
from sysid.bench.scoring import score_solution
from sysid.basis.schemas import BasisMatrix
from sysid.common.mlflow_control import mlflow_context, mlflow_safe
from sysid.common.parallel import ordered_map
from sysid.core.errors import ConfigError, SysIdError
from sysid.er.schemas import ErConfig, ErTrace
from sysid.er.service import entropic_regression
from sysid.observability.metrics import SOLVER_CALLS_TOTAL, SOLVER_LATENCY
from sysid.solvers.greedy import ols_default_grid, solve_ols, solve_ols_cv
from sysid.solvers.least_squares import solve_ls
from sysid.solvers.schemas import CrossValidationPlan, SolverId, SparseSolution
from sysid.solvers.sparse_penalized import (
    cs_epsilon_grid,
    lasso_lambda_grid,
    solve_cs,
    solve_cs_cv,
    solve_lasso,
    solve_lasso_cv,
)
from sysid.solvers.thresholding import solve_sindy, solve_tw
from sysid.utils.logger import get_logger

logger = get_logger(__name__)

MEASUREMENT_NOTE = (
    "n_rows counts regression rows after derivative alignment; "
    "n_raw_samples counts samples drawn from the generator"
)


ALLOWED_PARAMS: Dict[SolverId, set] = {
    SolverId.LS: set(),
    SolverId.OLS: {"threshold", "grid", "n_folds"},
    SolverId.LASSO: {"lambda", "grid", "n_folds"},
    SolverId.CS: {"epsilon", "grid", "n_folds"},
    SolverId.SINDY: {"lambda"},
    SolverId.TW: {"lambda", "mu", "tol"},
    SolverId.ER: set(ErConfig.model_fields),
}


def derive_seed(*entropy: int) -> int:
    return int(np.random.SeedSequence(list(entropy)).generate_state(1)[0])


def _plan(params: Dict[str, Any], default_grid: List[float]) -> CrossValidationPlan:
    return CrossValidationPlan(
        grid=params.get("grid", default_grid),
        n_folds=params.get("n_folds", 5),
    )


def invoke_solver(
    spec: SolverSpec, phi: BasisMatrix, f: np.ndarray, *, seed: int
) -> Tuple[SparseSolution, Optional[ErTrace]]:
    """
    Run one configured solver on one target vector.

    Solvers with a tunable hyperparameter cross-validate it unless the
    spec fixes it (``threshold`` / ``lambda`` / ``epsilon``).

    Raises:
        ConfigError: unknown or invalid solver parameters.
    """
    params = dict(spec.params)
    unknown = set(params) - ALLOWED_PARAMS[spec.name]
    if unknown:
        raise ConfigError(f"Unknown parameters for solver {spec.name.value}: {sorted(unknown)}")

    try:
        if spec.name is SolverId.LS:
            return solve_ls(phi, f), None

        if spec.name is SolverId.OLS:
            if "threshold" in params:
                return solve_ols(phi, f, params["threshold"]), None
            return solve_ols_cv(phi, f, _plan(params, ols_default_grid())), None

        if spec.name is SolverId.LASSO:
            if "lambda" in params:
                return solve_lasso(phi, f, params["lambda"]), None
            return solve_lasso_cv(phi, f, _plan(params, lasso_lambda_grid(phi, f))), None

        if spec.name is SolverId.CS:
            if "epsilon" in params:
                return solve_cs(phi, f, params["epsilon"]), None
            return solve_cs_cv(phi, f, _plan(params, cs_epsilon_grid())), None

        if spec.name is SolverId.SINDY:
            return solve_sindy(phi, f, params.get("lambda", 0.02)), None

        if spec.name is SolverId.TW:
            return (
                solve_tw(
                    phi,
                    f,
                    params.get("lambda", 0.02),
                    params.get("mu", 0.0125),
                    params.get("tol", 1e-6),
                ),
                None,
            )

        config = ErConfig.model_validate({"seed": seed, **params})
        return entropic_regression(phi, f, config)

    except ValidationError as exc:
        raise ConfigError(f"Invalid parameters for solver {spec.name.value}: {exc}") from exc


def _fit_all_dimensions(
    config: ExperimentConfig, spec: SolverSpec, problem: Problem, run_index: int, run_seed: int
) -> RunRecord:
    base = {
        "solver": spec.name,
        "run_index": run_index,
        "run_seed": run_seed,
        "n_rows": problem.n_rows,
        "n_raw_samples": problem.n_raw_samples,
    }
    start = time.time()
    try:
        solutions: List[SparseSolution] = []
        traces: List[Dict[str, Any]] = []
        for dim in range(problem.state_dim):
            solution, trace = invoke_solver(
                spec, problem.basis, problem.targets[:, dim], seed=derive_seed(run_seed, dim)
            )
            solutions.append(solution)
            if trace is not None:
                traces.append(trace.model_dump())

    except ConfigError:
        raise
    except (SysIdError, ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
        elapsed = time.time() - start
        SOLVER_CALLS_TOTAL.labels(solver=spec.name.value, status="error").inc()
        logger.exception(
            "Solver failed", extra={"solver": spec.name.value, "run_index": run_index}
        )
        return RunRecord(**base, wall_time=elapsed, error=f"{type(exc).__name__}: {exc}")

    elapsed = time.time() - start
    SOLVER_LATENCY.labels(solver=spec.name.value).observe(elapsed)
    SOLVER_CALLS_TOTAL.labels(solver=spec.name.value, status="ok").inc()

    error, exact = (None, None)
    if problem.truth is not None:
        error, exact = score_solution(problem.truth, solutions)

    return RunRecord(
        **base,
        parameter_error=error,
        exact_recovery=exact,
        support_found=[list(s.support) for s in solutions],
        flags=[f"dim{dim}:{flag}" for dim, s in enumerate(solutions) for flag in s.flags],
        wall_time=elapsed,
        traces=traces if (config.include_traces and traces) else None,
    )


def run_once(config: ExperimentConfig, run: Tuple[int, int]) -> List[RunRecord]:
    """All solvers on one freshly simulated dataset; ``run`` is (index, seed)."""
    run_index, run_seed = run
    try:
        problem = prepare_problem(config, run_seed)
    except ConfigError:
        raise
    except SysIdError as exc:
        logger.exception("Data generation failed", extra={"run_index": run_index})
        return [
            RunRecord(
                solver=spec.name,
                run_index=run_index,
                run_seed=run_seed,
                n_rows=0,
                n_raw_samples=0,
                error=f"{type(exc).__name__}: {exc}",
            )
            for spec in config.solvers
        ]

    records = [
        _fit_all_dimensions(config, spec, problem, run_index, run_seed)
        for spec in config.solvers
    ]
    logger.info(
        "Run finished",
        extra={"run_index": run_index, "run_seed": run_seed, "rows": problem.n_rows},
    )
    return records


def aggregate_runs(config: ExperimentConfig, records: List[RunRecord]) -> List[SolverAggregate]:
    """Median and quartiles of the parameter error, exact-recovery rate per solver."""
    aggregates = []
    for solver in dict.fromkeys(spec.name for spec in config.solvers):
        mine = [r for r in records if r.solver is solver]
        errors = [r.parameter_error for r in mine if r.parameter_error is not None]
        scored = any(r.exact_recovery is not None for r in mine)

        q1 = median = q3 = None
        if errors:
            q1, median, q3 = (float(v) for v in np.percentile(errors, [25, 50, 75]))

        aggregates.append(
            SolverAggregate(
                solver=solver,
                n_runs=len(mine),
                n_failed=sum(r.error is not None for r in mine),
                median_error=median,
                q1_error=q1,
                q3_error=q3,
                exact_recovery_probability=(
                    sum(bool(r.exact_recovery) for r in mine) / len(mine) if scored else None
                ),
            )
        )
    return aggregates


def run_experiment(
    config: ExperimentConfig, *, max_workers: Optional[int] = None
) -> ExperimentReport:
    """
    Execute every run of an experiment and aggregate the results.

    Runs get independent seeds spawned from ``config.seed``. With more
    than one worker they run in separate processes; the report still lists
    them in run order. Prometheus counters only see runs executed in the
    calling process.

    Raises:
        ConfigError: invalid system or solver parameters.
    """
    run_seeds = [derive_seed(config.seed, i) for i in range(config.n_runs)]
    started = datetime.now(timezone.utc)

    with mlflow_context(run_name=f"{config.system}-seed{config.seed}"):
        mlflow_safe(
            mlflow.log_params,
            {
                "system": config.system,
                "basis_degree": config.basis_degree,
                "n_samples": config.n_samples,
                "n_runs": config.n_runs,
                "noise_eps1": config.noise.eps1,
                "noise_eps2": config.noise.eps2,
                "noise_p": config.noise.p,
            },
        )

        batches = ordered_map(
            partial(run_once, config),
            list(enumerate(run_seeds)),
            max_workers=max_workers,
            processes=True,
        )
        records = [record for batch in batches for record in batch]
        aggregates = aggregate_runs(config, records)

        for aggregate in aggregates:
            if aggregate.median_error is not None:
                mlflow_safe(mlflow.log_metric, f"{aggregate.solver.value}_median_error", aggregate.median_error)
            if aggregate.exact_recovery_probability is not None:
                mlflow_safe(
                    mlflow.log_metric,
                    f"{aggregate.solver.value}_exact_recovery",
                    aggregate.exact_recovery_probability,
                )

    logger.info(
        "Experiment finished",
        extra={"system": config.system, "runs": config.n_runs, "records": len(records)},
    )
    return ExperimentReport(
        config=config,
        runs=records,
        aggregates=aggregates,
        metadata={
            "started_at": started.isoformat(),
            "finished_at": datetime.now(timezone.utc).isoformat(),
            "sysid_version": __version__,
            "measurements": MEASUREMENT_NOTE,
        },
    )
