from sysid.bench.config_loader import load_experiment_config
from sysid.bench.problems import Problem, generate_data, prepare_problem
from sysid.bench.report import emit_report, load_aggregates_csv, load_report
from sysid.bench.runner import aggregate_runs, invoke_solver, run_experiment
from sysid.bench.schemas import (
    ExperimentConfig,
    ExperimentReport,
    RunRecord,
    SolverAggregate,
    SolverSpec,
)
from sysid.bench.scoring import score_solution

__all__ = [
    "ExperimentConfig",
    "ExperimentReport",
    "Problem",
    "RunRecord",
    "SolverAggregate",
    "SolverSpec",
    "aggregate_runs",
    "emit_report",
    "generate_data",
    "invoke_solver",
    "load_aggregates_csv",
    "load_experiment_config",
    "load_report",
    "prepare_problem",
    "run_experiment",
    "score_solution",
]
