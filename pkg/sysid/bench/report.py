"""
Writing and reading benchmark reports.

JSON: ``report.json`` holds the whole ExperimentReport.

CSV: ``runs.csv`` (one row per solver and run, columns RUN_COLUMNS),
``aggregates.csv`` (one row per solver, columns AGGREGATE_COLUMNS) and
``config.json`` (config echo, metadata and run seeds).
"""

import json
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
import pandas as pd

from sysid.bench.schemas import ExperimentReport, SolverAggregate
from sysid.core.errors import DataError
from sysid.utils.logger import get_logger

logger = get_logger(__name__)

RUN_COLUMNS = [
    "solver",
    "run_index",
    "run_seed",
    "n_rows",
    "n_raw_samples",
    "parameter_error",
    "exact_recovery",
    "support_size",
    "support_found",
    "flags",
    "wall_time",
    "error",
]

AGGREGATE_COLUMNS = [
    "solver",
    "n_runs",
    "n_failed",
    "median_error",
    "q1_error",
    "q3_error",
    "exact_recovery_probability",
]

_FLOAT_FORMAT = "%.17g"


def _runs_frame(report: ExperimentReport) -> pd.DataFrame:
    rows = [
        {
            "solver": r.solver.value,
            "run_index": r.run_index,
            "run_seed": r.run_seed,
            "n_rows": r.n_rows,
            "n_raw_samples": r.n_raw_samples,
            "parameter_error": r.parameter_error,
            "exact_recovery": r.exact_recovery,
            "support_size": sum(len(s) for s in r.support_found),
            "support_found": json.dumps(r.support_found),
            "flags": ";".join(r.flags),
            "wall_time": r.wall_time,
            "error": r.error or "",
        }
        for r in report.runs
    ]
    return pd.DataFrame(rows, columns=RUN_COLUMNS)


def _aggregates_frame(report: ExperimentReport) -> pd.DataFrame:
    rows = [{**a.model_dump(), "solver": a.solver.value} for a in report.aggregates]
    return pd.DataFrame(rows, columns=AGGREGATE_COLUMNS)


def emit_report(
    report: ExperimentReport,
    out_dir: Union[str, Path],
    fmt: str = "json",
    *,
    include_traces: Optional[bool] = None,
) -> List[Path]:
    """
    Write a report in the requested format.

    Args:
        report (ExperimentReport): Finished experiment.
        out_dir (Union[str, Path]): Target directory, created if missing.
        fmt (str): ``json`` or ``csv``.
        include_traces (Optional[bool]): Keep Entropic Regression traces in
            the JSON output; defaults to the experiment's own setting.

    Returns:
        List[Path]: Files written.

    Raises:
        DataError: unknown format or an I/O failure (the path is named).
    """
    out_dir = Path(out_dir)
    if include_traces is None:
        include_traces = report.config.include_traces

    try:
        out_dir.mkdir(parents=True, exist_ok=True)

        if fmt == "json":
            path = out_dir / "report.json"
            exclude = None if include_traces else {"runs": {"__all__": {"traces"}}}
            path.write_text(report.model_dump_json(indent=2, exclude=exclude))
            written = [path]

        elif fmt == "csv":
            runs_path = out_dir / "runs.csv"
            aggregates_path = out_dir / "aggregates.csv"
            config_path = out_dir / "config.json"

            _runs_frame(report).to_csv(runs_path, index=False, float_format=_FLOAT_FORMAT)
            _aggregates_frame(report).to_csv(aggregates_path, index=False, float_format=_FLOAT_FORMAT)
            config_path.write_text(
                json.dumps(
                    {
                        "config": report.config.model_dump(mode="json"),
                        "metadata": report.metadata,
                        "run_seeds": sorted({r.run_seed for r in report.runs}),
                    },
                    indent=2,
                )
            )
            written = [runs_path, aggregates_path, config_path]

        else:
            raise DataError(f"Unknown report format: {fmt}")

    except OSError as exc:
        raise DataError(f"Cannot write report to {out_dir}: {exc}") from exc

    logger.info("Report written", extra={"files": [str(p) for p in written]})
    return written


def load_report(path: Union[str, Path]) -> ExperimentReport:
    """Parse a ``report.json`` file."""
    path = Path(path)
    try:
        return ExperimentReport.model_validate_json(path.read_text())
    except OSError as exc:
        raise DataError(f"Cannot read report {path}: {exc}") from exc


def load_aggregates_csv(path: Union[str, Path]) -> List[SolverAggregate]:
    """Parse ``aggregates.csv`` back into SolverAggregate records."""
    path = Path(path)
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except (OSError, pd.errors.ParserError) as exc:
        raise DataError(f"Cannot read aggregates {path}: {exc}") from exc

    if list(frame.columns) != AGGREGATE_COLUMNS:
        raise DataError(f"{path} does not have the aggregate columns {AGGREGATE_COLUMNS}")

    records = frame.astype(object).where(frame.notna(), None).to_dict(orient="records")
    return [
        SolverAggregate.model_validate(
            {k: (v.item() if isinstance(v, np.generic) else v) for k, v in record.items()}
        )
        for record in records
    ]
