"""
sysid command-line interface.

    python -m sysid.main generate    --config exp.json [--seed N] [--out-dir D] [--format csv|npz]
    python -m sysid.main fit         --config exp.json [--solver er ...] [--out-dir D] [--resimulate]
    python -m sysid.main bench       --config exp.json [--seed N] [--out-dir D] [--format json|csv]
    python -m sysid.main estimate-mi --csv data.csv --x z1 --y z2 [--z z3] [--k 2] [--shuffles 100]

Exit codes: 0 success, 2 configuration error, 3 runtime failure.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from sysid.bench.config_loader import load_experiment_config
from sysid.bench.problems import generate_data, prepare_problem
from sysid.bench.report import emit_report
from sysid.bench.runner import derive_seed, invoke_solver, run_experiment
from sysid.bench.schemas import ExperimentReport, SolverSpec
from sysid.config import settings
from sysid.core.errors import ConfigError, DataError, SimulationDivergedError, SysIdError
from sysid.dynamics.io import read_csv, write_binary, write_csv
from sysid.dynamics.schemas import TimeSeriesSet
from sysid.dynamics.systems import simulate_polynomial_model
from sysid.infotheory.estimators import estimate_cmi
from sysid.infotheory.schemas import ShuffleTestConfig
from sysid.infotheory.significance import shuffle_threshold
from sysid.observability.metrics import dump_metrics
from sysid.solvers.schemas import SolverId
from sysid.utils.logger import get_logger, set_level

logger = get_logger(__name__)
console = Console()

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


# ===== Parser =====


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sysid",
        description="Sparse system identification with Entropic Regression and baselines",
    )
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=None,
        help="Override SYSID_LOG_LEVEL for this invocation",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    generate = commands.add_parser("generate", help="Write the noisy trajectory of one run")
    generate.add_argument("--config", required=True, help="Experiment JSON file")
    generate.add_argument("--seed", type=int, default=None, help="Override the master seed")
    generate.add_argument("--out-dir", default=".", help="Output directory")
    generate.add_argument("--format", choices=["csv", "npz"], default="csv")

    fit = commands.add_parser("fit", help="Fit one dataset and print the identified models")
    fit.add_argument("--config", required=True, help="Experiment JSON file")
    fit.add_argument("--seed", type=int, default=None, help="Override the master seed")
    fit.add_argument(
        "--solver",
        action="append",
        choices=[s.value for s in SolverId],
        help="Restrict to these solvers (repeatable); defaults to the config's list",
    )
    fit.add_argument("--out-dir", default=None, help="Write fit.json (and resimulations) here")
    fit.add_argument("--format", choices=["json"], default="json")
    fit.add_argument(
        "--resimulate",
        action="store_true",
        help="Run each recovered model from the first sample and write its trajectory CSV",
    )

    bench = commands.add_parser("bench", help="Run a full experiment and write the report")
    bench.add_argument("--config", required=True, help="Experiment JSON file")
    bench.add_argument("--seed", type=int, default=None, help="Override the master seed")
    bench.add_argument("--out-dir", default="bench_out", help="Output directory")
    bench.add_argument("--format", choices=["json", "csv"], default="json")
    bench.add_argument("--traces", action="store_true", help="Keep ER traces in JSON output")
    bench.add_argument("--workers", type=int, default=None, help="Parallel runs")

    mi = commands.add_parser("estimate-mi", help="k-NN (conditional) mutual information of CSV columns")
    mi.add_argument("--csv", required=True, help="CSV file with a header row")
    mi.add_argument("--x", required=True, help="Comma-separated column names")
    mi.add_argument("--y", required=True, help="Comma-separated column names")
    mi.add_argument("--z", default=None, help="Comma-separated conditioning columns")
    mi.add_argument("--k", type=int, default=None, help="Neighbour count")
    mi.add_argument("--shuffles", type=int, default=0, help="Shuffle-test replicas (0 = skip)")
    mi.add_argument("--alpha", type=float, default=None, help="Shuffle-test percentile")
    mi.add_argument("--seed", type=int, default=0)

    return parser


# ===== Commands =====


def _run_seed(seed: int) -> int:
    # Same seed the bench harness gives run 0.
    return derive_seed(seed, 0)


def cmd_generate(args: argparse.Namespace) -> int:
    config = load_experiment_config(args.config, seed=args.seed)
    data = generate_data(config, _run_seed(config.seed))

    series = data.noisy
    if data.static_targets is not None:
        series = TimeSeriesSet(
            times=series.times,
            states=np.column_stack([series.states, data.static_targets]),
            dt=series.dt,
        )

    out_dir = Path(args.out_dir)
    if args.format == "csv":
        path = write_csv(series, out_dir / "trajectory.csv")
    else:
        path = write_binary(series, out_dir / "trajectory.npz")

    console.print(f"[green]Wrote[/green] {path} ({series.n_samples} samples, {series.state_dim} columns)")
    return EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    config = load_experiment_config(args.config, seed=args.seed)
    run_seed = _run_seed(config.seed)
    problem = prepare_problem(config, run_seed)

    specs = list(config.solvers)
    if args.solver:
        configured = {spec.name.value: spec for spec in specs}
        specs = [configured.get(name, SolverSpec(name=name)) for name in args.solver]

    labels = problem.basis.labels()
    output = {"system": config.system, "run_seed": run_seed, "n_rows": problem.n_rows, "solvers": {}}

    for spec in specs:
        dims = []
        for dim in range(problem.state_dim):
            solution, _ = invoke_solver(
                spec, problem.basis, problem.targets[:, dim], seed=derive_seed(run_seed, dim)
            )
            dims.append(solution)

        table = Table(title=f"{spec.name.value.upper()} on {config.system}")
        table.add_column("dim")
        table.add_column("terms")
        table.add_column("residual", justify="right")
        for dim, solution in enumerate(dims):
            terms = " + ".join(
                f"{solution.coefficients[i]:.4g}·{labels[i]}" for i in solution.support
            )
            table.add_row(f"z{dim + 1}", terms or "0", f"{solution.residual_norm:.4g}")
        console.print(table)

        output["solvers"][spec.name.value] = [
            {
                "support": list(s.support),
                "terms": [labels[i] for i in s.support],
                "coefficients": s.coefficients.tolist(),
                "residual_norm": s.residual_norm,
                "flags": s.flags,
                "hyperparams": s.hyperparams,
            }
            for s in dims
        ]

        if args.resimulate and args.out_dir:
            _resimulate(spec.name.value, dims, problem, Path(args.out_dir))

    if args.out_dir:
        path = Path(args.out_dir) / "fit.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(output, indent=2, default=_jsonable))
        console.print(f"[green]Wrote[/green] {path}")

    return EXIT_OK


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    return str(value)


def _resimulate(name: str, solutions, problem, out_dir: Path) -> None:
    if problem.static:
        logger.warning("Static problems cannot be resimulated", extra={"solver": name})
        return

    coefficients = np.column_stack([s.coefficients for s in solutions])
    try:
        series = simulate_polynomial_model(
            coefficients,
            problem.basis.columns,
            problem.aligned.states[0],
            problem.aligned.dt,
            problem.aligned.n_samples,
            discrete=problem.discrete,
        )
    except SimulationDivergedError as exc:
        logger.warning("Recovered model diverged", extra={"solver": name, "step": exc.step})
        console.print(f"[yellow]{name}: recovered model diverged at step {exc.step}[/yellow]")
        return

    path = write_csv(series, out_dir / f"resimulated_{name}.csv")
    console.print(f"[green]Wrote[/green] {path}")


def _print_aggregates(report: ExperimentReport) -> None:
    table = Table(title=f"{report.config.system}: {report.config.n_runs} runs")
    for column in ("solver", "median error", "q1", "q3", "exact recovery", "failed"):
        table.add_column(column, justify="right" if column != "solver" else "left")

    def fmt(value: Optional[float]) -> str:
        return "-" if value is None else f"{value:.3e}"

    for a in report.aggregates:
        table.add_row(
            a.solver.value,
            fmt(a.median_error),
            fmt(a.q1_error),
            fmt(a.q3_error),
            "-" if a.exact_recovery_probability is None else f"{a.exact_recovery_probability:.0%}",
            str(a.n_failed),
        )
    console.print(table)


def cmd_bench(args: argparse.Namespace) -> int:
    config = load_experiment_config(args.config, seed=args.seed)
    if args.traces:
        config = config.model_copy(update={"include_traces": True})
    report = run_experiment(config, max_workers=args.workers)

    written = emit_report(report, args.out_dir, args.format, include_traces=args.traces or None)
    if settings.METRICS_ENABLED:
        dump_metrics(str(Path(args.out_dir) / "metrics.prom"))

    _print_aggregates(report)
    for path in written:
        console.print(f"[green]Wrote[/green] {path}")
    return EXIT_OK


def _columns(frame, names: Optional[str]) -> Optional[np.ndarray]:
    if not names:
        return None
    wanted = [name.strip() for name in names.split(",") if name.strip()]
    missing = [name for name in wanted if name not in frame.columns]
    if missing:
        raise ConfigError(f"Unknown CSV columns: {missing}")
    return frame[wanted].to_numpy(dtype=np.float64)


def cmd_estimate_mi(args: argparse.Namespace) -> int:
    try:
        frame = pd.read_csv(args.csv, comment="#", float_precision="round_trip")
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise DataError(f"Cannot read {args.csv}: {exc}") from exc

    x = _columns(frame, args.x)
    y = _columns(frame, args.y)
    z = _columns(frame, args.z)

    value = estimate_cmi(x, y, z, args.k)
    kind = "I(X;Y|Z)" if z is not None else "I(X;Y)"
    console.print(f"{kind} = {value:.6f} nats")

    if args.shuffles > 0:
        shuffle = ShuffleTestConfig(
            n_shuffles=args.shuffles,
            seed=args.seed,
            **({"alpha": args.alpha} if args.alpha is not None else {}),
        )
        threshold = shuffle_threshold(x, y, z, args.k, shuffle)
        verdict = "significant" if value > threshold else "not significant"
        console.print(f"shuffle threshold = {threshold:.6f} nats ({verdict})")

    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "fit": cmd_fit,
    "bench": cmd_bench,
    "estimate-mi": cmd_estimate_mi,
}


# ===== Entry point =====


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.log_level:
        set_level(args.log_level)

    try:
        return COMMANDS[args.command](args)
    except (ConfigError, ValidationError) as exc:
        logger.error("Configuration error: %s", exc)
        console.print(f"[red]Configuration error:[/red] {exc}")
        return EXIT_CONFIG
    except (SysIdError, OSError, np.linalg.LinAlgError) as exc:
        logger.exception("Command failed")
        console.print(f"[red]Failed:[/red] {exc}")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
